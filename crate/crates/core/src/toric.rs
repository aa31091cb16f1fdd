//! Toric symplectic manifolds `ℂⁿ // 𝕋ᵏ` from integer weight data.
//!
//! Given weights `w_1, …, w_n ∈ ℤᵏ` and a regular value `τ ∈ ℚᵏ`, the module
//! computes the lattice `Δ(τ)` of spherical classes, the Kähler chamber of
//! `τ`, its dual (effective) cone, the Fano test, the period of `[ω_τ]` on
//! `Δ(τ)`, Givental's fixed-point bound and the quantum Stanley–Reisner
//! relations. Cones are handled by brute-force enumeration over weight
//! subsets, which is fine for the small `k` of interest.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::novikov::NovikovElement;
use crate::qlinalg::{det, dot, kernel, rank, solve};
use crate::quantum::{GradedClass, QuantumRing, RingError};
use crate::rat::{ceil_i64, fmt_q, gcd_q, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("invalid toric input: {0}")]
    InvalidInput(String),
    #[error("the weights do not span ℚ^k")]
    WeightsDontSpan,
    #[error("tau is not a regular value: {0}")]
    NotRegularValue(String),
    #[error("weight subset {0:?} around tau has determinant ≠ ±1 (action not free); rerun with allow_nonfree")]
    NonFree(Vec<usize>),
    #[error("not Fano: effective class {xi:?} has ⟨c1, ξ⟩ = {c1}")]
    NotFano { xi: Vec<i64>, c1: i64 },
    #[error("the symplectic class pairs to zero on Δ(τ)")]
    IrrationalPeriodStructure,
    #[error("{0:?} is not in the effective cone")]
    NotEffective(Vec<i64>),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

type Result<T> = std::result::Result<T, ToricError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSpec {
    pub k: usize,
    pub n: usize,
    pub weights: Vec<Vec<i64>>,
    #[serde(with = "crate::rat::serde_q_vec")]
    pub tau: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeData {
    /// ℤ-basis of `Δ(τ)`.
    pub delta_tau: Vec<Vec<i64>>,
    /// Primitive extremal rays of the dual of the chamber, sorted.
    pub effective_generators: Vec<Vec<i64>>,
    /// Primitive extremal rays of the Kähler chamber `C(τ)`.
    pub chamber_rays: Vec<Vec<i64>>,
    /// Indices `j` with `τ ∉ cone(I_j)` (empty divisors).
    pub empty_divisors: Vec<usize>,
    /// Bases around `τ` whose determinant is not ±1.
    pub nonfree_bases: Vec<Vec<usize>>,
    weights: Vec<Vec<i64>>,
}

impl LatticeData {
    /// `ξ ↦ (⟨w_1,ξ⟩, …, ⟨w_n,ξ⟩)`.
    pub fn d_map(&self, xi: &[i64]) -> Vec<i64> {
        self.weights.iter().map(|w| idot(w, xi)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumSRRelation {
    pub xi: Vec<i64>,
    pub d: Vec<i64>,
    pub lhs_monomial: Vec<u32>,
    pub rhs_monomial: Vec<u32>,
    #[serde(with = "crate::rat::serde_q")]
    pub area: Q,
}

impl QuantumSRRelation {
    fn from_d(xi: Vec<i64>, d: Vec<i64>, area: Q) -> Self {
        let lhs_monomial = d.iter().map(|&x| x.max(0) as u32).collect();
        let rhs_monomial = d.iter().map(|&x| (-x).max(0) as u32).collect();
        QuantumSRRelation { xi, d, lhs_monomial, rhs_monomial, area }
    }
}

impl std::fmt::Display for QuantumSRRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mono = |e: &[u32]| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("X{}", i + 1) } else { format!("X{}^{x}", i + 1) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        write!(f, "{} = T^({})*{}", mono(&self.lhs_monomial), fmt_q(&self.area), mono(&self.rhs_monomial))
    }
}

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Scale a nonzero rational vector to the primitive integer vector on its ray.
fn primitive(v: &[Q]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64().expect("coordinate fits in i64")).collect()
}

/// Coefficients of `τ` in the independent family `cols`, if `τ` lies in
/// their span.
fn coefficients(cols: &[&Vec<i64>], tau: &[Q]) -> Option<Vec<Q>> {
    let m: Vec<Vec<Q>> = (0..tau.len()).map(|i| cols.iter().map(|c| q(c[i])).collect()).collect();
    solve(&m, tau)
}

fn in_cone_of_independent(cols: &[&Vec<i64>], tau: &[Q]) -> bool {
    coefficients(cols, tau).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
}

fn is_independent(cols: &[&Vec<i64>]) -> bool {
    let m: Vec<Vec<Q>> = cols.iter().map(|c| qvec(c)).collect();
    rank(&m) == cols.len()
}

/// Extremal rays of `{x : ⟨e, x⟩ = 0 for e in eqs, ⟨h, x⟩ ≥ 0 for h in ineqs}`,
/// assumed pointed.
fn extreme_rays(eqs: &[Vec<Q>], ineqs: &[Vec<Q>], k: usize) -> Vec<Vec<i64>> {
    let eq_rank = rank(eqs);
    let need = k - 1 - eq_rank.min(k - 1);
    let mut out: Vec<Vec<i64>> = Vec::new();
    for subset in (0..ineqs.len()).combinations(need) {
        let mut m: Vec<Vec<Q>> = eqs.to_vec();
        m.extend(subset.iter().map(|&i| ineqs[i].clone()));
        if rank(&m) != k - 1 {
            continue;
        }
        let ker = kernel(&m, k);
        let r = &ker[0];
        let vals: Vec<Q> = ineqs.iter().map(|h| dot(h, r)).collect();
        let ray = if vals.iter().all(|v| !v.is_negative()) {
            r.clone()
        } else if vals.iter().all(|v| !v.is_positive()) {
            r.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let p = primitive(&ray);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort();
    out
}

/// ℤ-basis of `{x ∈ ℤᵏ : A x = 0}` by unimodular column operations.
fn integer_kernel(a: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let mut h: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    };
    let mut col = 0;
    for r in 0..h.len() {
        if col == k {
            break;
        }
        loop {
            // smallest nonzero |h[r][c]| among c ≥ col moves to col
            let Some(piv) = (col..k).filter(|&c| h[r][c] != 0).min_by_key(|&c| h[r][c].abs()) else {
                break;
            };
            swap(&mut h, col, piv);
            swap(&mut u, col, piv);
            let mut done = true;
            for c in col + 1..k {
                if h[r][c] != 0 {
                    let f = h[r][c].div_euclid(h[r][col]);
                    col_op(&mut h, c, col, f);
                    col_op(&mut u, c, col, f);
                    if h[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    let mut out: Vec<Vec<i64>> =
        (col..k).map(|c| (0..k).map(|i| i64::try_from(u[i][c]).expect("kernel entry fits in i64")).collect()).collect();
    out.sort();
    out
}

impl ToricSpec {
    pub fn new(weights: Vec<Vec<i64>>, tau: Vec<Q>) -> Result<Self> {
        let spec = ToricSpec { k: tau.len(), n: weights.len(), weights, tau };
        spec.validate()?;
        Ok(spec)
    }

    /// `ℂPⁿ`: `n+1` copies of the weight `1`, line area `tau`.
    pub fn cp(n: usize, tau: Q) -> Result<Self> {
        Self::new(vec![vec![1]; n + 1], vec![tau])
    }

    pub fn cp1xcp1(a: Q, b: Q) -> Result<Self> {
        Self::new(vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]], vec![a, b])
    }

    /// Hirzebruch surface `F_a` with the default `τ = (a+1, 1)`.
    pub fn hirzebruch(a: i64) -> Result<Self> {
        Self::new(vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![a, 1]], vec![q(a + 1), q(1)])
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let spec: ToricSpec =
            serde_json::from_value(v.clone()).map_err(|e| ToricError::InvalidInput(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(ToricError::InvalidInput("k must be positive".into()));
        }
        if self.weights.len() != self.n {
            return Err(ToricError::InvalidInput(format!("n = {} but {} weights given", self.n, self.weights.len())));
        }
        if self.tau.len() != self.k || self.weights.iter().any(|w| w.len() != self.k) {
            return Err(ToricError::InvalidInput(format!("weights and tau must have length k = {}", self.k)));
        }
        Ok(())
    }

    /// `c_1 = Σ w_i`.
    pub fn c1(&self) -> Vec<i64> {
        (0..self.k).map(|j| self.weights.iter().map(|w| w[j]).sum()).collect()
    }

    /// Complex dimension `n - k`.
    pub fn dim_c(&self) -> usize {
        self.n - self.k
    }

    fn bases_around_tau(&self, skip: Option<usize>) -> Vec<Vec<usize>> {
        (0..self.n)
            .filter(|&i| Some(i) != skip)
            .combinations(self.k)
            .filter(|s| {
                let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &self.weights[i]).collect();
                is_independent(&cols) && in_cone_of_independent(&cols, &self.tau)
            })
            .collect()
    }

    pub fn analyze(&self, allow_nonfree: bool) -> Result<LatticeData> {
        self.validate()?;
        let (k, n) = (self.k, self.n);
        let wq: Vec<Vec<Q>> = self.weights.iter().map(|w| qvec(w)).collect();
        if rank(&wq) < k {
            return Err(ToricError::WeightsDontSpan);
        }
        // τ must avoid every cone on fewer than k weights (Carathéodory:
        // independent subsets suffice)
        for size in 0..k {
            for s in (0..n).combinations(size) {
                let cols: Vec<&Vec<i64>> = s.iter().map(|&i| &self.weights[i]).collect();
                if is_independent(&cols) && in_cone_of_independent(&cols, &self.tau) {
                    let names: Vec<String> = s.iter().map(|i| format!("w{}", i + 1)).collect();
                    return Err(ToricError::NotRegularValue(format!(
                        "tau lies in the cone of {{{}}}",
                        names.join(", ")
                    )));
                }
            }
        }
        let bases = self.bases_around_tau(None);
        if bases.is_empty() {
            return Err(ToricError::NotRegularValue("tau is outside the cone of all weights".into()));
        }
        let mut nonfree_bases = Vec::new();
        let mut facets: Vec<Vec<Q>> = Vec::new();
        for b in &bases {
            let m: Vec<Vec<Q>> = b.iter().map(|&i| wq[i].clone()).collect();
            let d = det(&m);
            if d.abs() != Q::one() {
                nonfree_bases.push(b.clone());
            }
            // rows of the dual basis: ⟨b*_i, w_j⟩ = δ_ij
            for i in 0..k {
                let mut e = vec![Q::zero(); k];
                e[i] = Q::one();
                let dual = solve(&m, &e).expect("basis is invertible");
                let p = qvec(&primitive(&dual));
                if !facets.contains(&p) {
                    facets.push(p);
                }
            }
        }
        if !nonfree_bases.is_empty() && !allow_nonfree {
            return Err(ToricError::NonFree(nonfree_bases[0].clone()));
        }
        let chamber_rays = extreme_rays(&[], &facets, k);
        let empty_divisors: Vec<usize> = (0..n).filter(|&j| self.bases_around_tau(Some(j)).is_empty()).collect();
        let eq_rows: Vec<Vec<i64>> = empty_divisors.iter().map(|&j| self.weights[j].clone()).collect();
        let delta_tau = integer_kernel(&eq_rows, k);
        let eqs: Vec<Vec<Q>> = eq_rows.iter().map(|w| qvec(w)).collect();
        let ineqs: Vec<Vec<Q>> = chamber_rays.iter().map(|r| qvec(r)).collect();
        let effective_generators = if delta_tau.is_empty() { Vec::new() } else { extreme_rays(&eqs, &ineqs, k) };
        Ok(LatticeData {
            delta_tau,
            effective_generators,
            chamber_rays,
            empty_divisors,
            nonfree_bases,
            weights: self.weights.clone(),
        })
    }

    /// `⟨τ, ξ⟩`, the symplectic area of `A_ξ`.
    pub fn area(&self, xi: &[i64]) -> Q {
        dot(&self.tau, &qvec(xi))
    }

    pub fn fano_test(&self, data: &LatticeData) -> bool {
        self.fano_witness(data).is_none()
    }

    fn fano_witness(&self, data: &LatticeData) -> Option<ToricError> {
        let c1 = self.c1();
        data.effective_generators.iter().find_map(|xi| {
            let v = idot(&c1, xi);
            (v <= 0).then(|| ToricError::NotFano { xi: xi.clone(), c1: v })
        })
    }

    /// Positive generator of `{⟨τ, ξ⟩ : ξ ∈ Δ(τ)}`.
    pub fn minimal_period(&self, data: &LatticeData) -> Result<Q> {
        let areas: Vec<Q> = data.delta_tau.iter().map(|u| self.area(u)).collect();
        gcd_q(&areas).ok_or(ToricError::IrrationalPeriodStructure)
    }

    /// Minimal Chern number: positive generator of `⟨c_1, Δ(τ)⟩` (0 if `c_1`
    /// vanishes on `Δ(τ)`).
    pub fn minimal_chern_number(&self, data: &LatticeData) -> i64 {
        let c1 = self.c1();
        data.delta_tau.iter().fold(0i64, |g, u| g.gcd(&idot(&c1, u)))
    }

    /// `κ` with `c_1 = κ [ω_τ]` on `Δ(τ)`, if positive.
    pub fn monotone_constant(&self, data: &LatticeData) -> Option<Q> {
        let c1 = self.c1();
        let mut kappa: Option<Q> = None;
        for u in &data.delta_tau {
            let a = self.area(u);
            let c = q(idot(&c1, u));
            if a.is_zero() {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            let r = c / a;
            match &kappa {
                None => kappa = Some(r),
                Some(x) if *x == r => {}
                Some(_) => return None,
            }
        }
        kappa.filter(|x| x.is_positive())
    }

    /// `⌈p · max_ξ ⟨c_1,ξ⟩ / ⟨τ,ξ⟩⌉` over the effective extremal rays.
    pub fn givental_bound(&self, data: &LatticeData) -> Result<i64> {
        if let Some(e) = self.fano_witness(data) {
            return Err(e);
        }
        let p = self.minimal_period(data)?;
        let c1 = self.c1();
        let best = data
            .effective_generators
            .iter()
            .map(|xi| q(idot(&c1, xi)) / self.area(xi))
            .max()
            .ok_or(ToricError::IrrationalPeriodStructure)?;
        Ok(ceil_i64(&(p * best)))
    }

    /// Relation `Π X_i^{d_i⁺} = T^{⟨τ,ξ⟩} Π X_i^{d_i⁻}` for an effective `ξ ≠ 0`.
    pub fn relation_for(&self, data: &LatticeData, xi: &[i64]) -> Result<QuantumSRRelation> {
        let xq = qvec(xi);
        let in_delta = data.empty_divisors.iter().all(|&j| idot(&self.weights[j], xi) == 0);
        let in_dual = data.chamber_rays.iter().all(|r| !dot(&qvec(r), &xq).is_negative());
        if xi.iter().all(|&x| x == 0) || !in_delta || !in_dual {
            return Err(ToricError::NotEffective(xi.to_vec()));
        }
        Ok(QuantumSRRelation::from_d(xi.to_vec(), data.d_map(xi), self.area(xi)))
    }

    /// One relation per effective generator; with `generators_only = false`
    /// also every sum of two generators.
    pub fn quantum_sr_relations(&self, data: &LatticeData, generators_only: bool) -> Result<Vec<QuantumSRRelation>> {
        if let Some(e) = self.fano_witness(data) {
            return Err(e);
        }
        let gens = &data.effective_generators;
        let mut xis: Vec<Vec<i64>> = gens.clone();
        if !generators_only {
            for (i, a) in gens.iter().enumerate() {
                for b in &gens[i..] {
                    let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    if !xis.contains(&s) {
                        xis.push(s);
                    }
                }
            }
        }
        xis.iter().map(|xi| self.relation_for(data, xi)).collect()
    }

    /// `[X_i]` as the functional `ξ ↦ ⟨w_i, ξ⟩` on the basis of `Δ(τ)`.
    pub fn divisor_classes(&self, data: &LatticeData) -> Vec<Vec<i64>> {
        self.weights.iter().map(|w| data.delta_tau.iter().map(|u| idot(w, u)).collect()).collect()
    }

    /// Checks `Σ α_i [X_i] = 0` for a basis of the linear relations
    /// `Σ α_i w_i = 0`.
    pub fn linear_relations_hold(&self, data: &LatticeData) -> bool {
        let wt: Vec<Vec<Q>> = (0..self.k).map(|j| self.weights.iter().map(|w| q(w[j])).collect()).collect();
        let classes = self.divisor_classes(data);
        kernel(&wt, self.n).iter().all(|alpha| {
            (0..data.delta_tau.len()).all(|c| {
                alpha.iter().zip(&classes).fold(Q::zero(), |acc, (a, x)| acc + a * q(x[c])).is_zero()
            })
        })
    }

    /// Distinct weights (first-appearance order), their multiplicities and
    /// the factor of each weight, when the data is a product of projective
    /// spaces.
    fn projective_factors(&self, data: &LatticeData) -> Result<(Vec<Vec<i64>>, Vec<usize>, Vec<usize>)> {
        let mut distinct: Vec<Vec<i64>> = Vec::new();
        let mut mult = Vec::new();
        let mut factor_of = Vec::new();
        for w in &self.weights {
            match distinct.iter().position(|d| d == w) {
                Some(i) => {
                    mult[i] += 1;
                    factor_of.push(i);
                }
                None => {
                    distinct.push(w.clone());
                    mult.push(1);
                    factor_of.push(distinct.len() - 1);
                }
            }
        }
        let m: Vec<Vec<Q>> = distinct.iter().map(|w| qvec(w)).collect();
        let unimodular = distinct.len() == self.k && det(&m).abs() == Q::one();
        if !unimodular || mult.iter().any(|&x| x < 2) || !data.empty_divisors.is_empty() {
            return Err(ToricError::UnsupportedFamily(
                "toric rings are implemented for products of projective spaces only".into(),
            ));
        }
        Ok((distinct, mult, factor_of))
    }

    /// `QH_*(M_τ)` for a product of projective spaces, assembled from
    /// `qh_projective` factors (a single factor is returned as is).
    pub fn toric_quantum_ring(&self, data: &LatticeData) -> Result<QuantumRing> {
        let (distinct, mult, _) = self.projective_factors(data)?;
        let cols: Vec<&Vec<i64>> = distinct.iter().collect();
        let areas = coefficients(&cols, &self.tau).expect("distinct weights form a basis");
        let mut ring: Option<QuantumRing> = None;
        for (m, c) in mult.iter().zip(areas) {
            let f = QuantumRing::qh_projective(m - 1, c)?;
            ring = Some(match ring {
                None => f,
                Some(r) => QuantumRing::tensor(&r, &f)?,
            });
        }
        Ok(ring.expect("at least one factor"))
    }

    /// `[X_i]` inside the ring from [`Self::toric_quantum_ring`]: the
    /// hyperplane class of the factor carrying `w_i`.
    pub fn divisor_in_ring(&self, data: &LatticeData, ring: &QuantumRing, i: usize) -> Result<GradedClass> {
        let (distinct, _, factor_of) = self.projective_factors(data)?;
        let label = (0..distinct.len()).map(|f| if f == factor_of[i] { "u1" } else { "u0" }).join("|");
        Ok(ring.class(&label)?)
    }

    /// Evaluates both sides of each relation in the ring.
    pub fn relations_hold_in_ring(&self, data: &LatticeData, ring: &QuantumRing, rels: &[QuantumSRRelation]) -> Result<bool> {
        let xs: Vec<GradedClass> = (0..self.n).map(|i| self.divisor_in_ring(data, ring, i)).collect::<Result<_>>()?;
        let monomial = |e: &[u32]| -> Result<GradedClass> {
            let mut acc = ring.fundamental();
            for (x, &p) in xs.iter().zip(e) {
                for _ in 0..p {
                    acc = ring.product(&acc, x)?;
                }
            }
            Ok(acc)
        };
        for r in rels {
            let lhs = monomial(&r.lhs_monomial)?;
            let rhs = monomial(&r.rhs_monomial)?.scale(&NovikovElement::t_pow(r.area.clone()));
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Summary used by the CLI and the examples.
#[derive(Debug, Clone, Serialize)]
pub struct ToricReport {
    pub fano: bool,
    #[serde(with = "crate::rat::serde_q")]
    pub period: Q,
    pub effective_generators: Vec<Vec<i64>>,
    pub relations: Vec<String>,
    pub bound: Option<i64>,
    pub chern_number: i64,
    pub monotone: bool,
}

impl ToricSpec {
    pub fn report(&self, allow_nonfree: bool) -> Result<ToricReport> {
        let data = self.analyze(allow_nonfree)?;
        let fano = self.fano_test(&data);
        let period = self.minimal_period(&data)?;
        let (relations, bound) = if fano {
            let rels = self.quantum_sr_relations(&data, true)?;
            (rels.iter().map(ToString::to_string).collect(), Some(self.givental_bound(&data)?))
        } else {
            (Vec::new(), None)
        };
        Ok(ToricReport {
            fano,
            period,
            effective_generators: data.effective_generators.clone(),
            relations,
            bound,
            chern_number: self.minimal_chern_number(&data),
            monotone: self.monotone_constant(&data).is_some(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;

    #[test]
    fn cp2_data() {
        let s = ToricSpec::cp(2, q(1)).unwrap();
        let d = s.analyze(false).unwrap();
        assert_eq!(d.delta_tau, vec![vec![1]]);
        assert_eq!(d.effective_generators, vec![vec![1]]);
        assert_eq!(d.d_map(&[1]), vec![1, 1, 1]);
        assert!(s.fano_test(&d));
        assert_eq!(s.minimal_period(&d).unwrap(), q(1));
        assert_eq!(s.givental_bound(&d).unwrap(), 3);
        let rels = s.quantum_sr_relations(&d, true).unwrap();
        assert_eq!(rels[0].to_string(), "X1*X2*X3 = T^(1)*1");
    }

    #[test]
    fn cp1xcp1_periods() {
        let s = ToricSpec::cp1xcp1(q(2), q(3)).unwrap();
        let d = s.analyze(false).unwrap();
        assert_eq!(d.effective_generators, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s.minimal_period(&d).unwrap(), q(1));
        let s = ToricSpec::cp1xcp1(q(2), q(4)).unwrap();
        assert_eq!(s.minimal_period(&s.analyze(false).unwrap()).unwrap(), q(2));
        let s = ToricSpec::cp1xcp1(q(2), q(2)).unwrap();
        let d = s.analyze(false).unwrap();
        assert_eq!(s.givental_bound(&d).unwrap(), 2);
        assert_eq!(s.minimal_chern_number(&d), 2);
    }

    #[test]
    fn hirzebruch() {
        for a in 0..4 {
            let s = ToricSpec::hirzebruch(a).unwrap();
            let d = s.analyze(false).unwrap();
            assert_eq!(d.effective_generators, vec![vec![0, 1], vec![1, -a]]);
            assert_eq!(s.fano_test(&d), a < 2, "F_{a}");
            assert!(matches!(s.toric_quantum_ring(&d), Err(ToricError::UnsupportedFamily(_))) || a == 0);
        }
        let s = ToricSpec::hirzebruch(2).unwrap();
        let d = s.analyze(false).unwrap();
        assert!(matches!(s.givental_bound(&d), Err(ToricError::NotFano { c1: 0, .. })));
    }

    #[test]
    fn refusals() {
        let s = ToricSpec::new(vec![vec![1, 0], vec![2, 0]], vec![q(1), q(0)]).unwrap();
        assert_eq!(s.analyze(false), Err(ToricError::WeightsDontSpan));
        // τ on the wall spanned by a single weight
        let s = ToricSpec::cp1xcp1(q(1), q(0)).unwrap();
        assert!(matches!(s.analyze(false), Err(ToricError::NotRegularValue(_))));
        let s = ToricSpec::cp1xcp1(q(-1), q(1)).unwrap();
        assert!(matches!(s.analyze(false), Err(ToricError::NotRegularValue(_))));
        // weighted projective line
        let s = ToricSpec::new(vec![vec![1], vec![2]], vec![qf(1, 2)]).unwrap();
        assert!(matches!(s.analyze(false), Err(ToricError::NonFree(_))));
        assert!(s.analyze(true).is_ok());
    }

    #[test]
    fn integer_kernels() {
        assert_eq!(integer_kernel(&[vec![2, 4]], 2), vec![vec![-2, 1]]);
        let k = integer_kernel(&[vec![1, 1, 1]], 3);
        assert_eq!(k.len(), 2);
        assert!(k.iter().all(|v| v.iter().sum::<i64>() == 0));
        assert_eq!(integer_kernel(&[], 2).len(), 2);
    }

    #[test]
    fn rings_match_relations() {
        let s = ToricSpec::cp(2, q(1)).unwrap();
        let d = s.analyze(false).unwrap();
        let r = s.toric_quantum_ring(&d).unwrap();
        assert_eq!(r, QuantumRing::qh_projective(2, q(1)).unwrap());
        let s = ToricSpec::cp1xcp1(q(2), q(3)).unwrap();
        let d = s.analyze(false).unwrap();
        let r = s.toric_quantum_ring(&d).unwrap();
        let rels = s.quantum_sr_relations(&d, false).unwrap();
        assert_eq!(rels.len(), 5);
        assert!(s.relations_hold_in_ring(&d, &r, &rels).unwrap());
        assert!(s.linear_relations_hold(&d));
    }
}
