//! Fixed-point bounds for coadjoint orbits of U(n) from root-system data.

use hamfix::roots::{format_vector, OrbitSpec};

fn main() {
    let orbits = [
        ("CP^3", OrbitSpec::projective(4)),
        ("Gr(2,5)", OrbitSpec::grassmannian(2, 5)),
        ("F(1,3,4)", OrbitSpec::flag_1_n1(4)),
        ("U(4)/U(2)^2", OrbitSpec::equal_blocks(2, 2)),
        ("F_4", OrbitSpec::complete_flag(4)),
    ];
    for (name, spec) in orbits {
        let spec = spec.unwrap();
        let rep = spec.report(64).unwrap();
        println!(
            "{name:12} lambda = {:18} p = {}  cuplength = {}  bound = {:?}",
            format_vector(&spec.lambda),
            rep.period,
            rep.cuplength,
            rep.bound
        );
        if let Some(best) = rep.decompositions.iter().min_by(|a, b| a.theta.cmp(&b.theta)) {
            let roots: Vec<String> = best.roots.iter().map(|r| format_vector(r)).collect();
            println!("{:12} best decomposition theta = {}: {}", "", best.theta, roots.join(" "));
        }
    }
}
