//! Dense linear algebra over ℚ: row reduction, rank, kernels, solving.
//!
//! Matrices are `Vec<Vec<Q>>` in row-major order. Sizes in this crate are
//! tiny, so plain Gauss–Jordan elimination is used throughout.

use num_traits::{One, Zero};

use crate::rat::Q;

pub type QMatrix = Vec<Vec<Q>>;

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &[Vec<Q>]) -> (QMatrix, Vec<usize>) {
    let mut a: QMatrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel(m: &[Vec<Q>], cols: usize) -> QMatrix {
    let (a, pivots) = rref(m);
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[f] = Q::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[i][f].clone();
        }
        out.push(v);
    }
    out
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (a, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = a[i][cols].clone();
    }
    Some(x)
}

/// Coefficients `c` with `Σ c_i vs[i] = target`, if `target` is in the span.
pub fn express_in_span(vs: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    if vs.is_empty() {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let dim = target.len();
    let m: QMatrix = (0..dim).map(|j| vs.iter().map(|v| v[j].clone()).collect()).collect();
    solve(&m, target)
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let s = &f * &a[c][j];
                    a[i][j] -= s;
                }
            }
        }
    }
    d
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn identity(n: usize) -> QMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn transpose(m: &[Vec<Q>]) -> QMatrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn m(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinant() {
        assert_eq!(det(&m(&[&[0, 1], &[1, 0]])), q(-1));
        assert_eq!(det(&m(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), q(4));
    }

    #[test]
    fn solving() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[q(3), q(1)]), Some(vec![q(2), q(1)]));
        assert_eq!(solve(&m(&[&[1, 1], &[2, 2]]), &[q(1), q(3)]), None);
        assert_eq!(express_in_span(&[vec![q(1), q(0)]], &[q(0), q(1)]), None);
    }
}
