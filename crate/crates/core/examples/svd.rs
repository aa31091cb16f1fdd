//! Orthogonal bases over the Novikov field and an adapted SVD with a
//! prescribed kernel vector.

use hamfix::nalinalg::{ell, kernel_basis, leading_certificate, svd_with_kernel_vector, FilteredSpace, LambdaMatrix};
use hamfix::rat::q;

fn main() {
    let rows = vec![
        vec!["1".to_string(), "T^(1)".to_string(), "1 + T^(1)".to_string()],
        vec!["T^(-1)".to_string(), "1".to_string(), "T^(-1) + 1".to_string()],
    ];
    let l = LambdaMatrix::from_text_rows(&rows).expect("valid entries");
    let v = FilteredSpace::new(vec![q(0), q(1), q(-1)]);
    let w = FilteredSpace::new(vec![q(0), q(2)]);

    let xi = kernel_basis(&l).remove(0);
    let svd = svd_with_kernel_vector(&l, &v, &w, &xi).expect("xi lies in the kernel");
    println!("rank {}", svd.rank);
    for (i, b) in svd.basis_v.iter().enumerate() {
        println!("v{i}: {:?}  l = {}", b.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ell(&v, b).unwrap());
    }
    for (i, b) in svd.basis_w.iter().enumerate() {
        println!("w{i}: {:?}  l = {}", b.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ell(&w, b).unwrap());
    }
    println!("orthogonal: {} / {}", leading_certificate(&v, &svd.basis_v), leading_certificate(&w, &svd.basis_w));
}
