#![allow(dead_code)]

use hamfix::ls::{FilteredComplex, Generator};
use hamfix::nalinalg::{LambdaMatrix, LambdaVector};
use hamfix::novikov::NovikovElement;
use hamfix::qlinalg::solve;
use hamfix::rat::{q, qf, Q};
use num_traits::Zero;
use rand::Rng;

/// Finite Novikov sum with up to `max_terms` terms, exponents in `½ℤ ∩ [-3, 3]`.
pub fn novikov<R: Rng>(rng: &mut R, max_terms: usize) -> NovikovElement {
    let n = rng.gen_range(0..=max_terms);
    NovikovElement::from_terms((0..n).map(|_| (qf(rng.gen_range(-6..=6), 2), q(rng.gen_range(-3..=3)))))
}

pub fn nonzero_novikov<R: Rng>(rng: &mut R, max_terms: usize) -> NovikovElement {
    loop {
        let x = novikov(rng, max_terms.max(1));
        if !x.is_zero() {
            return x;
        }
    }
}

/// `m × n` matrix of rank at most `r`, built as a product `A·B`.
pub fn low_rank_matrix<R: Rng>(rng: &mut R, m: usize, n: usize, r: usize) -> LambdaMatrix {
    let small = |rng: &mut R| {
        let k = rng.gen_range(0..3);
        NovikovElement::from_terms((0..k).map(|_| (q(rng.gen_range(-2..3)), q(rng.gen_range(-3..4)))))
    };
    let a: Vec<Vec<NovikovElement>> = (0..m).map(|_| (0..r).map(|_| small(rng)).collect()).collect();
    let b: Vec<Vec<NovikovElement>> = (0..r).map(|_| (0..n).map(|_| small(rng)).collect()).collect();
    let mut ent = vec![vec![NovikovElement::zero(); n]; m];
    for i in 0..m {
        for j in 0..n {
            for k in 0..r {
                ent[i][j] = &ent[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    LambdaMatrix::new(ent).expect("exact entries")
}

/// `Σ c_i v_i`.
pub fn combine(vs: &[LambdaVector], cs: &[NovikovElement]) -> LambdaVector {
    let mut acc = LambdaVector::zero(vs[0].dim());
    for (v, c) in vs.iter().zip(cs) {
        acc = acc.add(&v.scale(c));
    }
    acc
}

/// Morse-type complex with `H_0 = H_top = ℚ`: extra homology generators in
/// the interior degrees and cancelling pairs, conjugated by a random unit
/// lower-triangular change of basis in each positive degree. Levels are
/// random integers in `0..=6`.
pub fn random_complex<R: Rng>(rng: &mut R, top: i64, max_gens: usize) -> FilteredComplex {
    loop {
        let mut degrees: Vec<i64> = Vec::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        degrees.push(0);
        degrees.push(top);
        while degrees.len() + 2 <= max_gens && rng.gen_bool(0.7) {
            let d = rng.gen_range(0..top);
            if rng.gen_bool(0.3) {
                degrees.push(rng.gen_range(1..top));
                continue;
            }
            pairs.push((degrees.len(), degrees.len() + 1));
            degrees.push(d + 1);
            degrees.push(d);
        }
        let n = degrees.len();
        let mut bd = vec![vec![Q::zero(); n]; n];
        for &(s, t) in &pairs {
            bd[t][s] = q(1);
            // keep the augmentation: every degree-0 generator is a point
            if degrees[t] == 0 {
                bd[0][s] = q(-1);
            }
        }
        // P: unit lower triangular within each degree
        let mut p = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            p[i][i] = q(1);
            for j in 0..i {
                if degrees[i] == degrees[j] && degrees[i] > 0 {
                    p[i][j] = q(rng.gen_range(-1..=1));
                }
            }
        }
        let mut pinv_cols = Vec::new();
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = q(1);
            pinv_cols.push(solve(&p, &e).expect("unit triangular"));
        }
        let pinv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| pinv_cols[j][i].clone()).collect()).collect();
        let mul = |a: &Vec<Vec<Q>>, b: &Vec<Vec<Q>>| -> Vec<Vec<Q>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).fold(Q::zero(), |acc, k| acc + &a[i][k] * &b[k][j])).collect()).collect()
        };
        let conj = mul(&mul(&p, &bd), &pinv);
        let gens: Vec<Generator> = degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| Generator { label: format!("g{i}"), degree: d, level: q(rng.gen_range(0..=6)) })
            .collect();
        let mut triples = Vec::new();
        for t in 0..n {
            for s in 0..n {
                if !conj[t][s].is_zero() {
                    triples.push((s, t, conj[t][s].clone()));
                }
            }
        }
        if let Ok(c) = FilteredComplex::new(gens, &triples) {
            return c;
        }
    }
}
