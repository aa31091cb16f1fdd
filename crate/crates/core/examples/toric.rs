//! Toric weight data: effective classes, quantum Stanley-Reisner relations
//! and the Givental-type bound.

use hamfix::rat::q;
use hamfix::toric::ToricSpec;

fn main() {
    let cases = [
        ("CP^2", ToricSpec::cp(2, q(1))),
        ("CP1xCP1 (2,3)", ToricSpec::cp1xcp1(q(2), q(3))),
        ("F_1", ToricSpec::hirzebruch(1)),
        ("F_2", ToricSpec::hirzebruch(2)),
    ];
    for (name, spec) in cases {
        let spec = spec.unwrap();
        match spec.report(false) {
            Ok(r) => {
                println!("{name}: fano {} monotone {} period {} N {} bound {:?}", r.fano, r.monotone, r.period, r.chern_number, r.bound);
                for rel in &r.relations {
                    println!("    {rel}");
                }
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
}
