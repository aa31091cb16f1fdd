//! Small quantum homology rings: products, cuplength and factorizations.

use hamfix::quantum::QuantumRing;
use hamfix::rat::q;

fn main() {
    let cp2 = QuantumRing::qh_projective(2, q(3)).unwrap();
    let u = cp2.class("u1").unwrap();
    for k in 1..=4 {
        println!("CP2: u^{k} = {}", cp2.format_class(&cp2.power(&u, k).unwrap()));
    }
    let r = cp2.quantum_cuplength(&q(3), 6);
    println!("CP2: qcl(3) >= {} via {}", r.lower_bound, r.witness.join("*"));
    if let Some(f) = cp2.pfqf_search(4) {
        println!("CP2: factorization of length {} gives at least {} fixed points", f.factors.len(), f.bound());
    }

    let gr = QuantumRing::qh_grassmannian(2, 4, q(1)).unwrap();
    let s1 = gr.class("s(1)").unwrap();
    println!("Gr(2,4): s1^4 = {}", gr.format_class(&gr.power(&s1, 4).unwrap()));
    println!("Gr(2,4): associative = {}", gr.associativity_violation().is_none());
}
