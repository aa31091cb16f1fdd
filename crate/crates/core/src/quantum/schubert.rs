//! Quantum Schubert calculus on `Gr(k, n)` via the rim-hook rule.
//!
//! Classical products are Schur-polynomial products in `k` variables
//! (Jacobi–Trudi expansion of one factor, then repeated Pieri). Partitions
//! that leave the `k × (n-k)` box are reduced by removing `n`-rim hooks,
//! done here on beta numbers `β_i = ν_i + k - i`: each subtraction of `n`
//! from a beta number contributes `(-1)^{k-1} q`, the resulting sequence is
//! sorted with the sign of the sorting permutation, and a repeated residue
//! kills the term.

use std::collections::BTreeMap;

/// A partition with parts in weakly decreasing order and no trailing zeros.
pub type Partition = Vec<usize>;

/// `Σ c_ν s_ν` with integer coefficients.
pub type SchurSum = BTreeMap<Partition, i64>;

fn trim(mut p: Partition) -> Partition {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// All partitions fitting in a `rows × cols` box, ordered by size then
/// lexicographically.
pub fn box_partitions(rows: usize, cols: usize) -> Vec<Partition> {
    fn rec(rows: usize, max: usize, prefix: &mut Partition, out: &mut Vec<Partition>) {
        out.push(trim(prefix.clone()));
        if prefix.len() == rows {
            return;
        }
        for part in 1..=max {
            prefix.push(part);
            rec(rows, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum::<usize>()).then(a.cmp(b)));
    out.dedup();
    out
}

/// `s_λ · h_r` in `k` variables: horizontal strips of size `r`.
fn pieri(lambda: &Partition, r: usize, k: usize) -> Vec<Partition> {
    let mut lam = lambda.clone();
    lam.resize(k, 0);
    let mut out = Vec::new();
    let mut nu = vec![0; k];
    fn rec(i: usize, left: usize, lam: &[usize], nu: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let k = lam.len();
        if i == k {
            if left == 0 {
                out.push(trim(nu.clone()));
            }
            return;
        }
        let max_add = if i == 0 { left } else { left.min(lam[i - 1] - lam[i]) };
        for add in 0..=max_add {
            nu[i] = lam[i] + add;
            rec(i + 1, left - add, lam, nu, out);
        }
    }
    if k == 0 {
        return if r == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    rec(0, r, &lam, &mut nu, &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element at `pos` adds n-1-pos inversions
            let sign = if (n - 1 - pos).is_multiple_of(2) { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Product `s_λ · s_μ` in `k` variables.
pub fn schur_product(lambda: &Partition, mu: &Partition, k: usize) -> SchurSum {
    let l = mu.len();
    let mut total = SchurSum::new();
    // s_μ = det(h_{μ_i - i + j})
    for (perm, sign) in permutations(l) {
        let mut hs = Vec::with_capacity(l);
        let mut ok = true;
        for (i, &pj) in perm.iter().enumerate() {
            let idx = mu[i] as i64 - i as i64 + pj as i64;
            if idx < 0 {
                ok = false;
                break;
            }
            hs.push(idx as usize);
        }
        if !ok {
            continue;
        }
        let mut cur: SchurSum = BTreeMap::from([(lambda.clone(), sign)]);
        for &r in &hs {
            let mut next = SchurSum::new();
            for (p, c) in &cur {
                for nu in pieri(p, r, k) {
                    *next.entry(nu).or_insert(0) += c;
                }
            }
            cur = next;
        }
        for (p, c) in cur {
            *total.entry(p).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Rim-hook reduction of `s_ν` (at most `k` rows) into `Gr(k, n)`:
/// `Some((sign, d, μ))` meaning `s_ν = sign · q^d · σ_μ`, or `None` if zero.
pub fn rim_hook_reduce(nu: &Partition, k: usize, n: usize) -> Option<(i64, usize, Partition)> {
    let mut parts = nu.clone();
    parts.resize(k, 0);
    let mut beta: Vec<usize> = (0..k).map(|i| parts[i] + k - 1 - i).collect();
    let mut d = 0;
    for b in beta.iter_mut() {
        d += *b / n;
        *b %= n;
    }
    let mut sign: i64 = if ((k - 1) * d).is_multiple_of(2) { 1 } else { -1 };
    // bubble sort into decreasing order, tracking the sign
    for i in 0..k {
        for j in 0..k - 1 - i {
            if beta[j] == beta[j + 1] {
                return None;
            }
            if beta[j] < beta[j + 1] {
                beta.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if beta.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mu: Partition = (0..k).map(|i| beta[i] - (k - 1 - i)).collect();
    Some((sign, d, trim(mu)))
}

/// Quantum product `σ_λ * σ_μ` in `QH(Gr(k, n))` as `(μ, d) ↦ coefficient`.
pub fn quantum_product(lambda: &Partition, mu: &Partition, k: usize, n: usize) -> BTreeMap<(Partition, usize), i64> {
    let mut out = BTreeMap::new();
    for (nu, c) in schur_product(lambda, mu, k) {
        if let Some((sign, d, red)) = rim_hook_reduce(&nu, k, n) {
            *out.entry((red, d)).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(a: &[usize], b: &[usize], k: usize, n: usize) -> Vec<((Partition, usize), i64)> {
        quantum_product(&a.to_vec(), &b.to_vec(), k, n).into_iter().collect()
    }

    #[test]
    fn classical_littlewood_richardson() {
        let p = schur_product(&vec![1], &vec![1], 2);
        assert_eq!(p, BTreeMap::from([(vec![2], 1), (vec![1, 1], 1)]));
        let p = schur_product(&vec![2, 1], &vec![2, 1], 3);
        assert_eq!(p.get(&vec![3, 2, 1]), Some(&2));
        assert_eq!(p.get(&vec![4, 2]), Some(&1));
    }

    #[test]
    fn box_counts() {
        assert_eq!(box_partitions(2, 2).len(), 6);
        assert_eq!(box_partitions(2, 3).len(), 10);
        assert_eq!(box_partitions(3, 4).len(), 35);
    }

    #[test]
    fn gr24_hand_values() {
        assert_eq!(qp(&[1], &[2, 1], 2, 4), vec![((vec![], 1), 1), ((vec![2, 2], 0), 1)]);
        assert_eq!(qp(&[2, 2], &[2, 2], 2, 4), vec![((vec![], 2), 1)]);
        assert_eq!(qp(&[2], &[2], 2, 4), vec![((vec![2, 2], 0), 1)]);
        assert_eq!(qp(&[1, 1], &[2], 2, 4), vec![((vec![], 1), 1)]);
    }

    #[test]
    fn reduction_signs() {
        // Gr(2,4): s_(3,1) has β = (4,1) → (0,1) with one subtraction, sorted by one swap
        assert_eq!(rim_hook_reduce(&vec![3, 1], 2, 4), Some((1, 1, vec![])));
        assert_eq!(rim_hook_reduce(&vec![3], 2, 4), None);
    }
}
