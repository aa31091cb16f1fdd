//! Root systems, Weyl groups and the coadjoint-orbit bound.
//!
//! Simple roots follow the Bourbaki coordinate realizations:
//!
//! | type | ambient | simple roots |
//! |------|---------|--------------|
//! | `A_n` | `ℝ^{n+1}` | `e_i - e_{i+1}` |
//! | `B_n` | `ℝ^n` | `e_i - e_{i+1}`, `e_n` |
//! | `C_n` | `ℝ^n` | `e_i - e_{i+1}`, `2e_n` |
//! | `D_n` | `ℝ^n` | `e_i - e_{i+1}`, `e_{n-1} + e_n` |
//! | `G_2` | `ℝ^3` | `e_1 - e_2`, `-2e_1 + e_2 + e_3` |
//! | `F_4` | `ℝ^4` | `e_2 - e_3`, `e_3 - e_4`, `e_4`, `½(e_1 - e_2 - e_3 - e_4)` |
//! | `E_8` | `ℝ^8` | `½(e_1 + e_8 - e_2 - ⋯ - e_7)`, `e_1 + e_2`, `e_{i-1} - e_{i-2}` (i = 3..8) |
//!
//! `E_7` and `E_6` use the first 7 and 6 simple roots of `E_8`. The inner
//! product is the Euclidean one on the ambient space. Every downstream value
//! depends only on the pairings `⟨λ, α̌⟩ = 2(λ, α)/(α, α)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qlinalg::{self, dot, identity, mat_mul, mat_vec, QMatrix};
use crate::rat::{ceil_q, fmt_q, gcd_q, q, qf, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("λ has {got} coordinates, the ambient space has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("λ pairs to zero with every simple root")]
    DegenerateOrbit,
    #[error("the orbit is not monotone")]
    NotMonotone,
    #[error("no orthogonal decomposition of w0 found")]
    NoneFound,
    #[error("invalid orbit preset: {0}")]
    InvalidPreset(String),
}

type Result<T> = std::result::Result<T, RootError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieType::A => "A",
            LieType::B => "B",
            LieType::C => "C",
            LieType::D => "D",
            LieType::E => "E",
            LieType::F => "F",
            LieType::G => "G",
        };
        write!(f, "{s}")
    }
}

impl FromStr for LieType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(LieType::A),
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            "E" => Ok(LieType::E),
            "F" => Ok(LieType::F),
            "G" => Ok(LieType::G),
            other => Err(RootError::InvalidType(other.to_string())),
        }
    }
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<Q> {
    let mut v = unit(n, i);
    v[j] -= Q::one();
    v
}

fn reflect(alpha: &[Q], x: &[Q]) -> Vec<Q> {
    let c = q(2) * dot(alpha, x) / dot(alpha, alpha);
    x.iter().zip(alpha).map(|(xi, ai)| xi - &c * ai).collect()
}

/// Matrix of the reflection `s_α` in ambient coordinates.
pub fn reflection_matrix(alpha: &[Q]) -> QMatrix {
    let n = alpha.len();
    let aa = dot(alpha, alpha);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let delta = if i == j { Q::one() } else { Q::zero() };
                    delta - q(2) * &alpha[i] * &alpha[j] / &aa
                })
                .collect()
        })
        .collect()
}

/// `⟨λ, α̌⟩ = 2(λ, α)/(α, α)`.
pub fn coroot_pairing(lambda: &[Q], alpha: &[Q]) -> Q {
    q(2) * dot(lambda, alpha) / dot(alpha, alpha)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemData {
    lie_type: LieType,
    rank: usize,
    ambient: usize,
    simple: Vec<Vec<Q>>,
    roots: Vec<Vec<Q>>,
    /// Coefficients of each root in the simple roots.
    coeffs: Vec<Vec<Q>>,
}

impl RootSystemData {
    pub fn build(lie_type: LieType, rank: usize) -> Result<Self> {
        let invalid = || RootError::InvalidType(format!("{lie_type}{rank}"));
        let simple: Vec<Vec<Q>> = match lie_type {
            LieType::A if rank >= 1 => (0..rank).map(|i| diff(rank + 1, i, i + 1)).collect(),
            LieType::B if rank >= 2 => {
                let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
                s.push(unit(rank, rank - 1));
                s
            }
            LieType::C if rank >= 2 => {
                let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
                s.push(unit(rank, rank - 1).iter().map(|x| x * q(2)).collect());
                s
            }
            LieType::D if rank >= 4 => {
                let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
                let mut last = unit(rank, rank - 2);
                last[rank - 1] = Q::one();
                s.push(last);
                s
            }
            LieType::G if rank == 2 => vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]],
            LieType::F if rank == 4 => vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![qf(1, 2), qf(-1, 2), qf(-1, 2), qf(-1, 2)],
            ],
            LieType::E if (6..=8).contains(&rank) => {
                let mut a1 = vec![qf(-1, 2); 8];
                a1[0] = qf(1, 2);
                a1[7] = qf(1, 2);
                let mut a2 = vec![Q::zero(); 8];
                a2[0] = Q::one();
                a2[1] = Q::one();
                let mut s = vec![a1, a2];
                for i in 3..=8 {
                    s.push(diff(8, i - 2, i - 3));
                }
                s.truncate(rank);
                s
            }
            _ => return Err(invalid()),
        };
        Ok(Self::from_simple_roots(lie_type, simple))
    }

    /// Root system generated by an arbitrary simple system.
    pub fn from_simple_roots(lie_type: LieType, simple: Vec<Vec<Q>>) -> Self {
        let rank = simple.len();
        let ambient = simple[0].len();
        let mut seen: BTreeSet<Vec<Q>> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Vec<Q>> = simple.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for s in &simple {
                let img = reflect(s, &r);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let roots: Vec<Vec<Q>> = seen.into_iter().collect();
        let gram: QMatrix = simple.iter().map(|a| simple.iter().map(|b| dot(a, b)).collect()).collect();
        let coeffs = roots
            .iter()
            .map(|r| {
                let rhs: Vec<Q> = simple.iter().map(|a| dot(a, r)).collect();
                qlinalg::solve(&gram, &rhs).expect("roots lie in the span of the simple roots")
            })
            .collect();
        RootSystemData { lie_type, rank, ambient, simple, roots, coeffs }
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn simple_roots(&self) -> &[Vec<Q>] {
        &self.simple
    }

    pub fn roots(&self) -> &[Vec<Q>] {
        &self.roots
    }

    pub fn is_root(&self, v: &[Q]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.coeffs[i].iter().all(|c| !c.is_negative())
    }

    pub fn positive_roots(&self) -> Vec<&Vec<Q>> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).map(|i| &self.roots[i]).collect()
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    /// Longest element `w_0` as an ambient matrix: reflect a regular
    /// dominant vector by simple reflections until it is antidominant.
    pub fn longest_element(&self) -> QMatrix {
        let mut v: Vec<Q> = vec![Q::zero(); self.ambient];
        for r in self.positive_roots() {
            for (a, b) in v.iter_mut().zip(r) {
                *a += b;
            }
        }
        let mut w = identity(self.ambient);
        loop {
            let Some(s) = self.simple.iter().find(|s| dot(s, &v).is_positive()) else {
                break;
            };
            v = reflect(s, &v);
            w = mat_mul(&reflection_matrix(s), &w);
        }
        w
    }

    /// `dim ker(w_0 + 1)`, the number of roots in any orthogonal decomposition.
    pub fn minus_one_dim(&self, w0: &[Vec<Q>]) -> usize {
        let mut m = w0.to_vec();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += Q::one();
        }
        self.ambient - qlinalg::rank(&m)
    }

    /// Orthogonal positive roots `α_1..α_r` with `s_{α_1}⋯s_{α_r} = w_0`.
    ///
    /// Candidates are the positive roots with `w_0 α = -α`; the search
    /// backtracks over pairwise orthogonal subsets of size `dim ker(w_0+1)`.
    /// With `lambda`, candidates are tried in increasing `|⟨λ, α̌⟩|` so the
    /// decompositions of small `Θ` are met first, and the output is sorted by
    /// `Θ`, then by the root coordinates. At most `limit` are returned.
    pub fn orthogonal_decompositions(&self, limit: usize, lambda: Option<&[Q]>) -> Result<Vec<OrthoDecomposition>> {
        let w0 = self.longest_element();
        let r = self.minus_one_dim(&w0);
        let mut cands: Vec<Vec<Q>> = self
            .positive_roots()
            .into_iter()
            .filter(|a| mat_vec(&w0, a).iter().zip(a.iter()).all(|(x, y)| *x == -y.clone()))
            .cloned()
            .collect();
        if let Some(l) = lambda {
            cands.sort_by(|a, b| coroot_pairing(l, a).abs().cmp(&coroot_pairing(l, b).abs()).then(a.cmp(b)));
        }
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        fn rec(cands: &[Vec<Q>], start: usize, r: usize, limit: usize, stack: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
            if found.len() >= limit {
                return;
            }
            if stack.len() == r {
                found.push(stack.clone());
                return;
            }
            if cands.len() - start < r - stack.len() {
                return;
            }
            for i in start..cands.len() {
                if stack.iter().all(|&j| dot(&cands[i], &cands[j]).is_zero()) {
                    stack.push(i);
                    rec(cands, i + 1, r, limit, stack, found);
                    stack.pop();
                    if found.len() >= limit {
                        return;
                    }
                }
            }
        }
        rec(&cands, 0, r, limit.max(1), &mut stack, &mut found);
        let mut out: Vec<OrthoDecomposition> = Vec::new();
        for idx in found {
            let mut roots: Vec<Vec<Q>> = idx.iter().map(|&i| cands[i].clone()).collect();
            roots.sort();
            let dec = OrthoDecomposition { roots };
            if dec.verify(self, &w0) {
                out.push(dec);
            }
        }
        if out.is_empty() {
            return Err(RootError::NoneFound);
        }
        match lambda {
            Some(l) => out.sort_by(|a, b| a.theta(l).cmp(&b.theta(l)).then(a.roots.cmp(&b.roots))),
            None => out.sort_by(|a, b| a.roots.cmp(&b.roots)),
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoDecomposition {
    pub roots: Vec<Vec<Q>>,
}

impl OrthoDecomposition {
    /// Pairwise orthogonal positive roots whose reflections multiply to `w0`.
    pub fn verify(&self, rs: &RootSystemData, w0: &[Vec<Q>]) -> bool {
        let positive = self.roots.iter().all(|a| {
            rs.roots.iter().position(|r| r == a).is_some_and(|i| rs.is_positive(i))
        });
        let orthogonal = self
            .roots
            .iter()
            .enumerate()
            .all(|(i, a)| self.roots[i + 1..].iter().all(|b| dot(a, b).is_zero()));
        let prod = self.roots.iter().fold(identity(rs.ambient), |acc, a| mat_mul(&acc, &reflection_matrix(a)));
        positive && orthogonal && prod == w0
    }

    /// `Σ |⟨λ, α̌_k⟩|`.
    pub fn theta(&self, lambda: &[Q]) -> Q {
        self.roots.iter().fold(Q::zero(), |acc, a| acc + coroot_pairing(lambda, a).abs())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSpec {
    pub rs: RootSystemData,
    pub lambda: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInput {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub rank: usize,
    #[serde(with = "crate::rat::serde_q_vec")]
    pub lambda: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub roots: Vec<Vec<Q>>,
    pub theta: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub period: Q,
    /// `min |⟨λ, α̌_i⟩|` over simple roots with nonzero pairing.
    pub period_single_root: Q,
    pub cuplength: usize,
    pub kappa: Option<Q>,
    pub decompositions: Vec<DecompositionReport>,
    pub bound: Option<i64>,
}

impl OrbitReport {
    /// The gcd period and the single-root minimum disagree.
    pub fn period_conflict(&self) -> bool {
        self.period != self.period_single_root
    }
}

impl OrbitSpec {
    pub fn new(rs: RootSystemData, lambda: Vec<Q>) -> Result<Self> {
        if lambda.len() != rs.ambient {
            return Err(RootError::DimensionMismatch { expected: rs.ambient, got: lambda.len() });
        }
        if lambda.iter().all(Zero::is_zero) {
            return Err(RootError::DegenerateOrbit);
        }
        Ok(OrbitSpec { rs, lambda })
    }

    pub fn from_input(input: &OrbitInput) -> Result<Self> {
        let t: LieType = input.lie_type.parse()?;
        Self::new(RootSystemData::build(t, input.rank)?, input.lambda.clone())
    }

    pub fn to_input(&self) -> OrbitInput {
        OrbitInput { lie_type: self.rs.lie_type.to_string(), rank: self.rs.rank, lambda: self.lambda.clone() }
    }

    /// Type `A_{n-1}` orbit of `λ ∈ ℝ^n`, the `U(n)` coadjoint orbit.
    pub fn unitary(lambda: Vec<Q>) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(RootError::InvalidPreset("U(n) needs n ≥ 2".into()));
        }
        Self::new(RootSystemData::build(LieType::A, lambda.len() - 1)?, lambda)
    }

    /// `ℂP^{n-1}`: `λ = (n-1, -1, …, -1)`.
    pub fn projective(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(RootError::InvalidPreset("projective space needs n ≥ 2".into()));
        }
        Self::unitary(monotone_unitary_lambda(&[1, n - 1]))
    }

    /// `Gr(k, n)`: `λ = (n-k, …, n-k, -k, …, -k)`.
    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(RootError::InvalidPreset(format!("Gr({k},{n}) needs 1 ≤ k < n")));
        }
        Self::unitary(monotone_unitary_lambda(&[k, n - k]))
    }

    /// `F(1, n-1, n)`: `λ = (n-1, 0, …, 0, -(n-1))`.
    pub fn flag_1_n1(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(RootError::InvalidPreset("F(1,n-1,n) needs n ≥ 3".into()));
        }
        let mut blocks = vec![1];
        if n > 2 {
            blocks.push(n - 2);
        }
        blocks.push(1);
        Self::unitary(monotone_unitary_lambda(&blocks))
    }

    /// `U(km)/U(k)^m`.
    pub fn equal_blocks(k: usize, m: usize) -> Result<Self> {
        if k == 0 || m < 2 {
            return Err(RootError::InvalidPreset("U(km)/U(k)^m needs k ≥ 1, m ≥ 2".into()));
        }
        Self::unitary(monotone_unitary_lambda(&vec![k; m]))
    }

    /// Complete flag `F_n`: `λ = (n-1, n-3, …, -(n-1))`.
    pub fn complete_flag(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(RootError::InvalidPreset("F_n needs n ≥ 2".into()));
        }
        Self::unitary(monotone_unitary_lambda(&vec![1; n]))
    }

    pub fn pairings_simple(&self) -> Vec<Q> {
        self.rs.simple.iter().map(|a| coroot_pairing(&self.lambda, a)).collect()
    }

    /// Simple roots orthogonal to `λ`, the parabolic set `S_P`.
    pub fn parabolic_set(&self) -> Vec<usize> {
        self.pairings_simple().iter().enumerate().filter(|(_, x)| x.is_zero()).map(|(i, _)| i).collect()
    }

    /// Positive generator of the ℤ-span of the simple-root pairings.
    pub fn symplectic_period(&self) -> Result<Q> {
        gcd_q(&self.pairings_simple()).ok_or(RootError::DegenerateOrbit)
    }

    /// Smallest nonzero `|⟨λ, α̌_i⟩|` over single simple roots.
    pub fn period_single_root(&self) -> Result<Q> {
        self.pairings_simple().iter().filter(|x| !x.is_zero()).map(|x| x.abs()).min().ok_or(RootError::DegenerateOrbit)
    }

    /// `#{α > 0 : ⟨λ, α̌⟩ ≠ 0} + 1`.
    pub fn orbit_cuplength(&self) -> usize {
        self.rs.positive_roots().iter().filter(|a| !coroot_pairing(&self.lambda, a).is_zero()).count() + 1
    }

    /// `κ > 0` with `proj(λ) = κ·Σ_{⟨λ,α̌⟩>0} α`, where `proj` is the
    /// orthogonal projection onto the span of the roots.
    pub fn monotone_check(&self) -> Option<Q> {
        let mut c1 = vec![Q::zero(); self.rs.ambient];
        for a in &self.rs.roots {
            if coroot_pairing(&self.lambda, a).is_positive() {
                for (x, y) in c1.iter_mut().zip(a) {
                    *x += y;
                }
            }
        }
        let s = &self.rs.simple;
        let gram: QMatrix = s.iter().map(|a| s.iter().map(|b| dot(a, b)).collect()).collect();
        let rhs: Vec<Q> = s.iter().map(|a| dot(a, &self.lambda)).collect();
        let coef = qlinalg::solve(&gram, &rhs)?;
        let mut proj = vec![Q::zero(); self.rs.ambient];
        for (c, a) in coef.iter().zip(s) {
            for (x, y) in proj.iter_mut().zip(a) {
                *x += c * y;
            }
        }
        let i = c1.iter().position(|x| !x.is_zero())?;
        let kappa = &proj[i] / &c1[i];
        let ok = kappa.is_positive() && proj.iter().zip(&c1).all(|(p, c)| *p == &kappa * c);
        ok.then_some(kappa)
    }

    /// `Σ |⟨λ, α̌_k⟩|` for a decomposition.
    pub fn theta_upper_bound(&self, dec: &OrthoDecomposition) -> Q {
        dec.theta(&self.lambda)
    }

    /// `sup_dec ⌈p · cuplength / Θ_dec⌉` over the decompositions found.
    pub fn orbit_fixed_point_bound(&self, search_limit: usize) -> Result<i64> {
        if self.monotone_check().is_none() {
            return Err(RootError::NotMonotone);
        }
        let p = self.symplectic_period()?;
        let cupl = Q::from_integer(self.orbit_cuplength().into());
        let decs = self.rs.orthogonal_decompositions(search_limit, Some(&self.lambda))?;
        decs.iter()
            .map(|d| {
                let theta = d.theta(&self.lambda);
                ceil_q(&(&p * &cupl / theta)).try_into().expect("bound fits in i64")
            })
            .max()
            .ok_or(RootError::NoneFound)
    }

    /// Everything at once; the bound is `None` for non-monotone orbits.
    pub fn report(&self, search_limit: usize) -> Result<OrbitReport> {
        let period = self.symplectic_period()?;
        let decs = self.rs.orthogonal_decompositions(search_limit, Some(&self.lambda))?;
        let kappa = self.monotone_check();
        let bound = if kappa.is_some() { Some(self.orbit_fixed_point_bound(search_limit)?) } else { None };
        Ok(OrbitReport {
            period,
            period_single_root: self.period_single_root()?,
            cuplength: self.orbit_cuplength(),
            kappa,
            decompositions: decs
                .into_iter()
                .map(|d| DecompositionReport { theta: d.theta(&self.lambda), roots: d.roots })
                .collect(),
            bound,
        })
    }
}

/// Monotone `λ` for `U(n)/U(k_1)×⋯×U(k_{r+1})` in the form
/// `(n - n_1, …, n - n_{i-1} - n_i, …, -n_r)` with `n_i = k_1 + ⋯ + k_i`.
pub fn monotone_unitary_lambda(blocks: &[usize]) -> Vec<Q> {
    let n: usize = blocks.iter().sum();
    let mut partial = vec![0usize];
    for b in blocks {
        partial.push(partial.last().unwrap() + b);
    }
    let mut out = Vec::with_capacity(n);
    for (i, &b) in blocks.iter().enumerate() {
        // block i+1 (1-based) has value n - n_{i} - n_{i+1}, last block -n_r
        let value = if i + 1 == blocks.len() {
            -(partial[i] as i64)
        } else {
            n as i64 - partial[i] as i64 - partial[i + 1] as i64
        };
        out.extend(std::iter::repeat_n(q(value), b));
    }
    out
}

pub fn format_vector(v: &[Q]) -> String {
    format!("({})", v.iter().map(fmt_q).collect::<Vec<_>>().join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn root_counts() {
        let cases = [
            (LieType::A, 2, 6),
            (LieType::B, 2, 8),
            (LieType::C, 3, 18),
            (LieType::D, 4, 24),
            (LieType::G, 2, 12),
            (LieType::F, 4, 48),
            (LieType::E, 6, 72),
        ];
        for (t, r, n) in cases {
            assert_eq!(RootSystemData::build(t, r).unwrap().roots().len(), n, "{t}{r}");
        }
        assert!(RootSystemData::build(LieType::G, 3).is_err());
        assert!(RootSystemData::build(LieType::D, 2).is_err());
    }

    #[test]
    fn g2_lengths() {
        let g = RootSystemData::build(LieType::G, 2).unwrap();
        let lens: BTreeSet<Q> = g.roots().iter().map(|r| dot(r, r)).collect();
        assert_eq!(lens.into_iter().collect::<Vec<_>>(), vec![q(2), q(6)]);
    }

    #[test]
    fn longest_elements() {
        let a1 = RootSystemData::build(LieType::A, 1).unwrap();
        assert_eq!(a1.longest_element(), vec![qs(&[0, 1]), qs(&[1, 0])]);
        let a2 = RootSystemData::build(LieType::A, 2).unwrap();
        assert_eq!(a2.longest_element(), vec![qs(&[0, 0, 1]), qs(&[0, 1, 0]), qs(&[1, 0, 0])]);
        let b2 = RootSystemData::build(LieType::B, 2).unwrap();
        assert_eq!(b2.longest_element(), vec![qs(&[-1, 0]), qs(&[0, -1])]);
    }

    #[test]
    fn decompositions() {
        let a3 = RootSystemData::build(LieType::A, 3).unwrap();
        let d = a3.orthogonal_decompositions(64, None).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].roots, vec![qs(&[0, 1, -1, 0]), qs(&[1, 0, 0, -1])]);
        let a1 = RootSystemData::build(LieType::A, 1).unwrap();
        assert_eq!(a1.orthogonal_decompositions(64, None).unwrap()[0].roots, vec![qs(&[1, -1])]);
        let b2 = RootSystemData::build(LieType::B, 2).unwrap();
        let d = b2.orthogonal_decompositions(64, None).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|x| x.roots == vec![qs(&[0, 1]), qs(&[1, 0])]));
        assert!(d.iter().any(|x| x.roots == vec![qs(&[1, -1]), qs(&[1, 1])]));
    }

    #[test]
    fn theta_values() {
        let gr = OrbitSpec::grassmannian(2, 4).unwrap();
        let d = gr.rs.orthogonal_decompositions(64, None).unwrap();
        assert_eq!(gr.theta_upper_bound(&d[0]), q(8));
        let f3 = OrbitSpec::unitary(qs(&[2, 0, -2])).unwrap();
        let d = f3.rs.orthogonal_decompositions(64, None).unwrap();
        assert_eq!(f3.theta_upper_bound(&d[0]), q(4));
    }

    #[test]
    fn periods() {
        let f3 = OrbitSpec::unitary(qs(&[2, 0, -2])).unwrap();
        assert_eq!(f3.symplectic_period().unwrap(), q(2));
        let gr = OrbitSpec::grassmannian(2, 4).unwrap();
        assert_eq!(gr.symplectic_period().unwrap(), q(4));
        let twice = OrbitSpec::unitary(qs(&[4, 4, -4, -4])).unwrap();
        assert_eq!(twice.symplectic_period().unwrap(), q(8));
        let mixed = OrbitSpec::unitary(qs(&[10, 6, 0])).unwrap();
        assert_eq!(mixed.symplectic_period().unwrap(), q(2));
        assert_eq!(mixed.period_single_root().unwrap(), q(4));
        let flat = OrbitSpec::unitary(qs(&[1, 1])).unwrap();
        assert_eq!(flat.symplectic_period(), Err(RootError::DegenerateOrbit));
    }

    #[test]
    fn cuplengths() {
        assert_eq!(OrbitSpec::grassmannian(2, 4).unwrap().orbit_cuplength(), 5);
        assert_eq!(OrbitSpec::complete_flag(3).unwrap().orbit_cuplength(), 4);
    }

    #[test]
    fn monotonicity() {
        for n in 2..7 {
            assert_eq!(OrbitSpec::projective(n).unwrap().lambda[0], q(n as i64 - 1));
            assert!(OrbitSpec::projective(n).unwrap().monotone_check().is_some());
        }
        assert_eq!(OrbitSpec::unitary(qs(&[2, 0, -2])).unwrap().monotone_check(), Some(q(1)));
        assert_eq!(OrbitSpec::unitary(qs(&[3, 0, -1])).unwrap().monotone_check(), None);
        // a central shift does not matter
        assert_eq!(OrbitSpec::unitary(qs(&[5, 3, 1])).unwrap().monotone_check(), Some(q(1)));
        assert_eq!(monotone_unitary_lambda(&[1, 1, 1]), qs(&[2, 0, -2]));
        assert_eq!(monotone_unitary_lambda(&[2, 2]), qs(&[2, 2, -2, -2]));
        assert_eq!(monotone_unitary_lambda(&[1, 2, 1]), qs(&[3, 0, 0, -3]));
    }

    #[test]
    fn bounds() {
        assert_eq!(OrbitSpec::grassmannian(2, 4).unwrap().orbit_fixed_point_bound(64).unwrap(), 3);
        assert_eq!(OrbitSpec::grassmannian(2, 5).unwrap().orbit_fixed_point_bound(64).unwrap(), 4);
        assert_eq!(OrbitSpec::complete_flag(3).unwrap().orbit_fixed_point_bound(64).unwrap(), 2);
        let bad = OrbitSpec::unitary(qs(&[3, 0, -1])).unwrap();
        assert_eq!(bad.orbit_fixed_point_bound(64), Err(RootError::NotMonotone));
    }
}
