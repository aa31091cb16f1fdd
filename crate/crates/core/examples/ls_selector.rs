//! Minmax critical values on filtered chain complexes.

use hamfix::ls::FilteredComplex;
use hamfix::rat::fmt_q;

fn main() {
    for name in ["circle", "sphere", "torus", "sphere-cancel"] {
        let c = FilteredComplex::preset(name).unwrap();
        print!("{name}:");
        for d in c.bottom_degree()..=c.top_degree() {
            for a in c.homology_basis(d) {
                print!("  H{d} -> {}", fmt_q(&c.c_ls(&a).unwrap()));
            }
        }
        println!();
    }
    let rp2 = FilteredComplex::preset("rp2").unwrap();
    println!("rp2 betti numbers over Q: {:?}", (0..=2).map(|d| rp2.betti(d)).collect::<Vec<_>>());
}
