//! Novikov-ring arithmetic: valuations, truncated inverses and exponentials.

use hamfix::novikov::NovikovElement;
use hamfix::rat::q;

fn main() {
    let a: NovikovElement = "1 + 2*T^(1/2) - T^(3)".parse().expect("valid element");
    let b: NovikovElement = "T^(-1) + 3".parse().expect("valid element");
    println!("a = {a}");
    println!("b = {b}");
    println!("a*b = {}", &a * &b);
    println!("nu(a) = {}, nu(b) = {}, nu(ab) = {}", a.valuation(), b.valuation(), (&a * &b).valuation());

    let inv = a.invert_truncated(&q(3)).expect("a is nonzero");
    println!("1/a up to T^3 = {inv}");

    let x: NovikovElement = "T^(1) + T^(2)".parse().unwrap();
    println!("exp(T + T^2) up to T^4 = {}", x.exp_truncated(&q(4)).unwrap());
}
