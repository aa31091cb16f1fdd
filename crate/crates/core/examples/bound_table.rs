//! The closed-form estimates side by side.

use std::collections::BTreeMap;

use hamfix::bounds::{self, cases};
use hamfix::rat::q;

fn main() {
    for n in 2..=6 {
        println!("CP^{}: {}", n - 1, cases::case1(n));
    }
    for (k, n) in [(2, 4), (2, 5), (3, 7)] {
        println!("Gr({k},{n}): {}", cases::case2(k, n));
    }
    for n in 3..=6 {
        println!("F(1,{},{n}): {}", n - 1, cases::case3(n));
    }
    println!("U(4)/U(2)^2: {} (ceiling form {})", cases::case4(2, 2), cases::case4_ceiling(2, 2));
    for n in 3..=5 {
        println!("F_{n}: {}", cases::case5(n));
    }

    let p = q(3);
    println!("main bound p=3 theta=3 cuplength=3: {}", bounds::thm_main_bound(&p, &p, 3).unwrap());
    println!("arnold p=3 norm=2 cuplength=3: {:?}", bounds::arnold_predicate(&p, &q(2), 3).unwrap());
    let table = BTreeMap::from([(q(0), 3), (q(3), 6)]);
    println!("quantum cuplength bound, norm 1: {}", bounds::thm_bcl_bound(&p, &table, &q(1)).unwrap());
    println!("blow-up of CP^3 at m=2: {}", bounds::blowup_bound(&q(4), &q(4), 2, &[1], 4).unwrap());
    let (raw, n) = bounds::thm_schtype_bound(4, 8, 6).unwrap();
    println!("Gr(2,4) nonnilpotent estimate: {raw} -> {n}");
}
