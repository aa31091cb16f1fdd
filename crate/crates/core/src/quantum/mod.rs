//! Small quantum homology rings with explicit structure constants.
//!
//! Classes are homology-graded: `[M]` has degree `2n`, `[pt]` degree `0`.
//! A [`QuantumRing`] stores the product of every pair of basis classes as a
//! [`GradedClass`] with Novikov coefficients; products of general classes
//! extend bilinearly. Only the undeformed product (`ζ = 0`) is modelled.

pub mod schubert;

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::novikov::{is_one, NovikovElement, PeriodLattice, Valuation};
use crate::rat::{fmt_q, gcd_q, q, serde_q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("classes belong to different rings")]
    RingMismatch,
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("the zero class has no powers to test")]
    ZeroClass,
    #[error("cannot parse ring: {0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, RingError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisClass {
    pub label: String,
    pub degree: i64,
}

/// Element of `H_*(M; Λ)` in a fixed ring's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedClass {
    ring_id: u64,
    coords: Vec<NovikovElement>,
}

impl GradedClass {
    pub fn coords(&self) -> &[NovikovElement] {
        &self.coords
    }

    pub fn ring_id(&self) -> u64 {
        self.ring_id
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(NovikovElement::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring_id != other.ring_id {
            return Err(RingError::RingMismatch);
        }
        Ok(GradedClass { ring_id: self.ring_id, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&NovikovElement::constant(q(-1))))
    }

    pub fn scale(&self, c: &NovikovElement) -> Self {
        GradedClass { ring_id: self.ring_id, coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Classical coefficient vector of the `T^g` part.
    pub fn component(&self, g: &Q) -> Vec<Q> {
        self.coords.iter().map(|c| c.coeff(g)).collect()
    }

    /// Smallest exponent occurring in any coordinate.
    pub fn min_exponent(&self) -> Option<Q> {
        self.coords.iter().filter_map(|c| c.min_exponent()).min().cloned()
    }

    /// `(z, c)` with `self = z·T^c·other`, if such a monomial multiple exists.
    pub fn monomial_ratio(&self, other: &Self) -> Option<(Q, Q)> {
        if self.ring_id != other.ring_id || other.is_zero() {
            return None;
        }
        let i = other.coords.iter().position(|c| !c.is_zero())?;
        let (e_o, c_o) = other.coords[i].leading_term()?;
        let (e_s, c_s) = self.coords[i].leading_term()?;
        let z = c_s / c_o;
        let c = e_s - e_o;
        let candidate = other.scale(&NovikovElement::monomial(z.clone(), c.clone()));
        (candidate == *self).then_some((z, c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumRing {
    name: String,
    id: u64,
    basis: Vec<BasisClass>,
    dim_n: i64,
    period: PeriodLattice,
    fundamental: usize,
    point: usize,
    /// `structure[i][j]` = coordinates of `e_i * e_j`.
    structure: Vec<Vec<Vec<NovikovElement>>>,
    pairing: Vec<Vec<Q>>,
    /// `⟨c_1, A⟩ / ⟨ω, A⟩` when the ring is monotone.
    monotone_ratio: Option<Q>,
    index: HashMap<String, usize>,
}

/// Certified lower bound for the quantum cuplength at period `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuplengthReport {
    pub g: Q,
    pub lower_bound: usize,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NilpotencyVerdict {
    /// `a^{k+m} = z·T^c·a^k` with `a^k ≠ 0`.
    ProvenPeriodic { k: usize, m: usize, z: Q, c: Q },
    /// Characteristic polynomial of multiplication by `a` is not `x^N`.
    ProvenCharPoly { coefficient_index: usize },
    NonzeroUpTo(usize),
    NilpotentAt(usize),
}

impl NilpotencyVerdict {
    pub fn is_proven_nonnilpotent(&self) -> bool {
        matches!(self, NilpotencyVerdict::ProvenPeriodic { .. } | NilpotencyVerdict::ProvenCharPoly { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub length: usize,
    pub order: Q,
    pub factors: Vec<String>,
    /// Coefficient `z` of `z·T^{gp}[M]`.
    pub z: Q,
}

impl Factorization {
    /// `⌈l / g⌉`.
    pub fn bound(&self) -> BigInt {
        crate::rat::ceil_q(&(Q::from_integer(self.length.into()) / &self.order))
    }
}

fn ring_hash(name: &str, basis: &[BasisClass], structure: &[Vec<Vec<NovikovElement>>], period: &Q) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    basis.hash(&mut h);
    structure.hash(&mut h);
    period.hash(&mut h);
    h.finish()
}

impl QuantumRing {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        basis: Vec<BasisClass>,
        dim_n: i64,
        period: Q,
        fundamental: usize,
        point: usize,
        structure: Vec<Vec<Vec<NovikovElement>>>,
        pairing: Option<Vec<Vec<Q>>>,
        monotone_ratio: Option<Q>,
    ) -> Result<Self> {
        let period = PeriodLattice::new(period).map_err(|e| RingError::InvalidRing(e.to_string()))?;
        let index: HashMap<String, usize> = basis.iter().enumerate().map(|(i, b)| (b.label.clone(), i)).collect();
        if index.len() != basis.len() {
            return Err(RingError::InvalidRing("duplicate basis labels".into()));
        }
        let id = ring_hash(&name, &basis, &structure, period.p());
        let mut ring = QuantumRing {
            name,
            id,
            basis,
            dim_n,
            period,
            fundamental,
            point,
            structure,
            pairing: Vec::new(),
            monotone_ratio,
            index,
        };
        ring.pairing = match pairing {
            Some(p) => p,
            None => ring.pairing_from_products(),
        };
        Ok(ring)
    }

    /// Poincaré pairing read off as the `[pt]` coefficient of the classical
    /// product.
    fn pairing_from_products(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.structure[i][j][self.point].coeff(&Q::zero())).collect())
            .collect()
    }

    /// `QH_*(ℂP^n)` with `u^a * u^b = u^{a+b}` for `a + b ≤ n` and
    /// `T^p u^{a+b-n-1}` otherwise. Labels are `u0 = [M]`, …, `un = [pt]`.
    pub fn qh_projective(n: usize, p: Q) -> Result<Self> {
        if n == 0 {
            return Err(RingError::InvalidShape("projective space needs n ≥ 1".into()));
        }
        let dim = n + 1;
        let basis: Vec<BasisClass> =
            (0..=n).map(|a| BasisClass { label: format!("u{a}"), degree: 2 * (n - a) as i64 }).collect();
        let mut structure = vec![vec![vec![NovikovElement::zero(); dim]; dim]; dim];
        for a in 0..=n {
            for b in 0..=n {
                if a + b <= n {
                    structure[a][b][a + b] = NovikovElement::one();
                } else {
                    structure[a][b][a + b - n - 1] = NovikovElement::t_pow(p.clone());
                }
            }
        }
        let ratio = Q::from_integer((n as i64 + 1).into()) / &p;
        Self::assemble(format!("CP{n}"), basis, n as i64, p, 0, n, structure, None, Some(ratio))
    }

    /// `QH_*(Gr(k, n))` in the Schubert basis, labels `s(λ_1,…)`.
    pub fn qh_grassmannian(k: usize, n: usize, p: Q) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(RingError::InvalidShape(format!("Gr({k},{n}) needs 1 ≤ k < n")));
        }
        let parts = schubert::box_partitions(k, n - k);
        let dim_c = k * (n - k);
        let label = |lam: &schubert::Partition| {
            format!("s({})", lam.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        };
        let basis: Vec<BasisClass> = parts
            .iter()
            .map(|lam| BasisClass { label: label(lam), degree: 2 * (dim_c - lam.iter().sum::<usize>()) as i64 })
            .collect();
        let pos: HashMap<&schubert::Partition, usize> = parts.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let d = parts.len();
        let mut structure = vec![vec![vec![NovikovElement::zero(); d]; d]; d];
        for i in 0..d {
            for j in i..d {
                let prod = schubert::quantum_product(&parts[i], &parts[j], k, n);
                let mut out = vec![NovikovElement::zero(); d];
                for ((mu, deg), c) in prod {
                    let t = NovikovElement::monomial(q(c), &p * Q::from_integer(deg.into()));
                    out[pos[&mu]] = &out[pos[&mu]] + &t;
                }
                structure[j][i] = out.clone();
                structure[i][j] = out;
            }
        }
        let point = pos[&vec![n - k; k]];
        let ratio = Q::from_integer((n as i64).into()) / &p;
        Self::assemble(format!("Gr({k},{n})"), basis, dim_c as i64, p, 0, point, structure, None, Some(ratio))
    }

    /// Künneth product; labels `a|b`, period the gcd of the two periods.
    pub fn tensor(a: &QuantumRing, b: &QuantumRing) -> Result<Self> {
        let (da, db) = (a.dim(), b.dim());
        let mut basis = Vec::with_capacity(da * db);
        for x in &a.basis {
            for y in &b.basis {
                basis.push(BasisClass { label: format!("{}|{}", x.label, y.label), degree: x.degree + y.degree });
            }
        }
        let idx = |i: usize, j: usize| i * db + j;
        let d = da * db;
        let mut structure = vec![vec![vec![NovikovElement::zero(); d]; d]; d];
        for i1 in 0..da {
            for j1 in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        let out = &mut structure[idx(i1, j1)][idx(i2, j2)];
                        for (k1, c1) in a.structure[i1][i2].iter().enumerate() {
                            if c1.is_zero() {
                                continue;
                            }
                            for (k2, c2) in b.structure[j1][j2].iter().enumerate() {
                                if !c2.is_zero() {
                                    out[idx(k1, k2)] = &out[idx(k1, k2)] + &(c1 * c2);
                                }
                            }
                        }
                    }
                }
            }
        }
        let period = gcd_q([a.period.p(), b.period.p()]).expect("periods are positive");
        let pairing = (0..d)
            .map(|x| (0..d).map(|y| &a.pairing[x / db][y / db] * &b.pairing[x % db][y % db]).collect())
            .collect();
        let ratio = match (&a.monotone_ratio, &b.monotone_ratio) {
            (Some(x), Some(y)) if x == y => Some(x.clone()),
            _ => None,
        };
        Self::assemble(
            format!("{}x{}", a.name, b.name),
            basis,
            a.dim_n + b.dim_n,
            period,
            idx(a.fundamental, b.fundamental),
            idx(a.point, b.point),
            structure,
            Some(pairing),
            ratio,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Complex dimension `n` of `M`.
    pub fn dim_n(&self) -> i64 {
        self.dim_n
    }

    pub fn period(&self) -> &Q {
        self.period.p()
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    pub fn monotone_ratio(&self) -> Option<&Q> {
        self.monotone_ratio.as_ref()
    }

    pub fn fundamental_label(&self) -> &str {
        &self.basis[self.fundamental].label
    }

    pub fn point_label(&self) -> &str {
        &self.basis[self.point].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| RingError::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    /// Structure constants `e_i * e_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[NovikovElement] {
        &self.structure[i][j]
    }

    pub fn pairing(&self, i: usize, j: usize) -> &Q {
        &self.pairing[i][j]
    }

    pub fn zero(&self) -> GradedClass {
        GradedClass { ring_id: self.id, coords: vec![NovikovElement::zero(); self.dim()] }
    }

    pub fn basis_class(&self, i: usize) -> GradedClass {
        let mut c = self.zero();
        c.coords[i] = NovikovElement::one();
        c
    }

    pub fn class(&self, label: &str) -> Result<GradedClass> {
        Ok(self.basis_class(self.index_of(label)?))
    }

    pub fn fundamental(&self) -> GradedClass {
        self.basis_class(self.fundamental)
    }

    pub fn point(&self) -> GradedClass {
        self.basis_class(self.point)
    }

    /// Class from `(label, coefficient)` pairs.
    pub fn class_from(&self, terms: &[(&str, NovikovElement)]) -> Result<GradedClass> {
        let mut c = self.zero();
        for (l, x) in terms {
            let i = self.index_of(l)?;
            c.coords[i] = &c.coords[i] + x;
        }
        Ok(c)
    }

    fn owns(&self, a: &GradedClass) -> Result<()> {
        if a.ring_id == self.id {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn product(&self, a: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
        self.owns(a)?;
        self.owns(b)?;
        let mut out = self.zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out.coords[k] = &out.coords[k] + &(&c * s);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `a * a * ⋯ * a` (`l ≥ 1` factors).
    pub fn power(&self, a: &GradedClass, l: usize) -> Result<GradedClass> {
        let mut acc = self.fundamental();
        for _ in 0..l {
            acc = self.product(&acc, a)?;
        }
        Ok(acc)
    }

    /// `I_ν(a) = max{-g | a_g ≠ 0}`.
    pub fn i_nu(&self, a: &GradedClass) -> Result<Valuation> {
        self.owns(a)?;
        Ok(a.coords.iter().map(NovikovElement::valuation).max().unwrap_or(Valuation::NegInfinity))
    }

    /// `∏(a, b) = Σ_g a_g ∘ b_{-g}` with `∘` the intersection pairing.
    pub fn pair_pi(&self, a: &GradedClass, b: &GradedClass) -> Result<Q> {
        self.owns(a)?;
        self.owns(b)?;
        let mut total = Q::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            for (j, bj) in b.coords.iter().enumerate() {
                if self.pairing[i][j].is_zero() {
                    continue;
                }
                for (g, x) in ai.terms() {
                    let y = bj.coeff(&-g.clone());
                    if !y.is_zero() {
                        total += x * y * &self.pairing[i][j];
                    }
                }
            }
        }
        Ok(total)
    }

    /// The same basis with every quantum correction removed.
    pub fn classical(&self) -> QuantumRing {
        let structure: Vec<Vec<Vec<NovikovElement>>> = self
            .structure
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|c| NovikovElement::constant(c.coeff(&Q::zero()))).collect())
                    .collect()
            })
            .collect();
        Self::assemble(
            format!("{} (classical)", self.name),
            self.basis.clone(),
            self.dim_n,
            self.period.p().clone(),
            self.fundamental,
            self.point,
            structure,
            Some(self.pairing.clone()),
            None,
        )
        .expect("stripping keeps a valid ring")
    }

    fn proper_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree < 2 * self.dim_n).collect()
    }

    fn nonnegative_exponents(&self) -> bool {
        self.structure.iter().flatten().flatten().all(|c| c.in_lambda0())
    }

    /// Products of `l = 1..=max_len` proper-degree basis classes, one
    /// representative factor list per distinct product value.
    fn product_layers(&self, max_len: usize, prune_above: Option<&Q>) -> Vec<Vec<(GradedClass, Vec<usize>)>> {
        let proper = self.proper_indices();
        let prune = |c: &GradedClass| match (prune_above, c.min_exponent()) {
            (_, None) => true,
            (Some(g), Some(e)) => e > *g,
            (None, _) => false,
        };
        let mut layers = Vec::new();
        let mut current: Vec<(GradedClass, Vec<usize>)> = Vec::new();
        for &i in &proper {
            let c = self.basis_class(i);
            current.push((c, vec![i]));
        }
        for _ in 0..max_len {
            let mut seen: BTreeMap<Vec<String>, usize> = BTreeMap::new();
            let mut kept: Vec<(GradedClass, Vec<usize>)> = Vec::new();
            for (c, f) in current {
                let key: Vec<String> = c.coords.iter().map(ToString::to_string).collect();
                match seen.get(&key) {
                    Some(&pos) => {
                        if self.label_key(&f) < self.label_key(&kept[pos].1) {
                            kept[pos].1 = f;
                        }
                    }
                    None => {
                        seen.insert(key, kept.len());
                        kept.push((c, f));
                    }
                }
            }
            let mut next = Vec::new();
            if layers.len() + 1 < max_len {
                for (c, f) in &kept {
                    if prune(c) {
                        continue;
                    }
                    let last = *f.last().unwrap();
                    for &i in proper.iter().filter(|&&i| i >= last) {
                        let prod = self.product(c, &self.basis_class(i)).expect("same ring");
                        let mut g = f.clone();
                        g.push(i);
                        next.push((prod, g));
                    }
                }
            }
            layers.push(kept);
            current = next;
            if current.is_empty() {
                break;
            }
        }
        layers
    }

    fn label_key(&self, f: &[usize]) -> Vec<String> {
        f.iter().map(|&i| self.basis[i].label.clone()).collect()
    }

    /// Largest `k + 1` (with `k ≤ max_len`) such that some product of `k`
    /// proper-degree basis classes has a nonzero `T^g` component. This is a
    /// lower bound for the quantum cuplength, which allows arbitrary classes.
    pub fn quantum_cuplength(&self, g: &Q, max_len: usize) -> CuplengthReport {
        let mut best = if g.is_zero() { 1 } else { 0 };
        let mut witness = Vec::new();
        if g.is_negative() || max_len == 0 {
            return CuplengthReport { g: g.clone(), lower_bound: if g.is_negative() { 0 } else { best }, witness };
        }
        let prune = self.nonnegative_exponents().then_some(g);
        for (l, layer) in self.product_layers(max_len, prune).iter().enumerate() {
            for (c, f) in layer {
                if c.component(g).iter().any(|x| !x.is_zero()) && l + 2 > best {
                    best = l + 2;
                    witness = self.label_key(f);
                }
            }
        }
        CuplengthReport { g: g.clone(), lower_bound: best, witness }
    }

    /// Decides whether powers of `a` can vanish.
    ///
    /// First looks for `a^{k+m} = z·T^c·a^k` with `a^k ≠ 0` and `k + m ≤ l_max`,
    /// which forces every power to be nonzero since `z·T^c` is a unit. If no
    /// such relation shows up, falls back to the characteristic polynomial of
    /// multiplication by `a`: `a` is nilpotent iff it equals `x^N`.
    pub fn nonnilpotent_test(&self, a: &GradedClass, l_max: usize) -> Result<NilpotencyVerdict> {
        self.owns(a)?;
        if a.is_zero() {
            return Err(RingError::ZeroClass);
        }
        let mut powers = vec![self.fundamental(), a.clone()];
        for l in 2..=l_max.max(1) {
            let next = self.product(&powers[l - 1], a)?;
            if next.is_zero() {
                return Ok(NilpotencyVerdict::NilpotentAt(l));
            }
            for k in 1..l {
                if let Some((z, c)) = next.monomial_ratio(&powers[k]) {
                    return Ok(NilpotencyVerdict::ProvenPeriodic { k, m: l - k, z, c });
                }
            }
            powers.push(next);
        }
        let charpoly = self.char_poly(a)?;
        if let Some(i) = (1..charpoly.len()).find(|&i| !charpoly[i].is_zero()) {
            return Ok(NilpotencyVerdict::ProvenCharPoly { coefficient_index: i });
        }
        Ok(NilpotencyVerdict::NonzeroUpTo(l_max))
    }

    /// Coefficients `c_0 = 1, c_1, …, c_N` of `det(xI - M_a)` (Faddeev–LeVerrier).
    pub fn char_poly(&self, a: &GradedClass) -> Result<Vec<NovikovElement>> {
        self.owns(a)?;
        let n = self.dim();
        // column j of M_a is a * e_j
        let mut m = vec![vec![NovikovElement::zero(); n]; n];
        for j in 0..n {
            let col = self.product(a, &self.basis_class(j))?;
            for i in 0..n {
                m[i][j] = col.coords[i].clone();
            }
        }
        let mat_mul = |x: &Vec<Vec<NovikovElement>>, y: &Vec<Vec<NovikovElement>>| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).fold(NovikovElement::zero(), |acc, k| &acc + &(&x[i][k] * &y[k][j])))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        };
        let mut coeffs = vec![NovikovElement::one()];
        let mut mk = vec![vec![NovikovElement::zero(); n]; n];
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
            let mut next = mat_mul(&m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = &row[i] + &coeffs[k - 1];
            }
            let am = mat_mul(&m, &next);
            let tr = (0..n).fold(NovikovElement::zero(), |acc, i| &acc + &am[i][i]);
            coeffs.push(tr.scale(&-Q::new(BigInt::one(), BigInt::from(k))));
            mk = next;
        }
        Ok(coeffs)
    }

    /// Searches products `u_1 * ⋯ * u_l` (`2 ≤ l ≤ max_len`) of proper basis
    /// classes whose `[M]` coefficient is a single monomial `z·T^{gp}`,
    /// `g ≥ 1` an integer. Returns the one maximising `⌈l/g⌉`, then shortest
    /// `l`, then lexicographically smallest labels.
    pub fn pfqf_search(&self, max_len: usize) -> Option<Factorization> {
        let mut best: Option<Factorization> = None;
        for (l, layer) in self.product_layers(max_len, None).iter().enumerate() {
            let length = l + 1;
            if length < 2 {
                continue;
            }
            for (c, f) in layer {
                let lam = &c.coords[self.fundamental];
                if !lam.is_monomial() {
                    continue;
                }
                let (e, z) = lam.leading_term().unwrap();
                let g = e / self.period.p();
                if !g.is_integer() || !g.is_positive() {
                    continue;
                }
                let cand = Factorization { length, order: g, factors: self.label_key(f), z: z.clone() };
                let better = match &best {
                    None => true,
                    Some(b) => {
                        let (cb, bb) = (cand.bound(), b.bound());
                        cb > bb || (cb == bb && (cand.length < b.length || (cand.length == b.length && cand.factors < b.factors)))
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        best
    }

    /// `[M] * e_i = e_i` for every basis class.
    pub fn check_unity(&self) -> bool {
        let m = self.fundamental();
        (0..self.dim()).all(|i| {
            let e = self.basis_class(i);
            self.product(&m, &e).unwrap() == e && self.product(&e, &m).unwrap() == e
        })
    }

    /// Graded commutativity on basis pairs (all degrees are even).
    pub fn check_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    /// First basis triple violating associativity, if any.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(&self.basis_class(i), &self.basis_class(j)).unwrap();
                for k in 0..d {
                    let left = self.product(&ij, &self.basis_class(k)).unwrap();
                    let jk = self.product(&self.basis_class(j), &self.basis_class(k)).unwrap();
                    let right = self.product(&self.basis_class(i), &jk).unwrap();
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Every term `T^g e_k` in `e_i * e_j` satisfies
    /// `deg e_k - (deg e_i + deg e_j - 2n) = 2⟨c_1, A⟩` with
    /// `⟨c_1, A⟩ = ratio · g`. Only meaningful for monotone rings.
    pub fn check_degrees(&self) -> Option<bool> {
        let ratio = self.monotone_ratio.as_ref()?;
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    for (g, _) in c.terms() {
                        let lhs = self.basis[k].degree - (self.basis[i].degree + self.basis[j].degree - 2 * self.dim_n);
                        if Q::from_integer(lhs.into()) != q(2) * ratio * g {
                            return Some(false);
                        }
                    }
                }
            }
        }
        Some(true)
    }

    pub fn format_class(&self, a: &GradedClass) -> String {
        let parts: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let label = &self.basis[i].label;
                if is_one(c) {
                    label.clone()
                } else if c.is_monomial() && c.cutoff().is_none() {
                    format!("{c}*{label}")
                } else {
                    format!("({c})*{label}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim();
        let mut structure = Vec::new();
        for i in 0..d {
            for j in i..d {
                let mut terms = Vec::new();
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    for (e, x) in c.terms() {
                        terms.push(serde_json::json!([self.basis[k].label, fmt_q(e), fmt_q(x)]));
                    }
                }
                if !terms.is_empty() {
                    structure.push(serde_json::json!({
                        "left": self.basis[i].label,
                        "right": self.basis[j].label,
                        "terms": terms,
                    }));
                }
            }
        }
        let mut pairing = Vec::new();
        for i in 0..d {
            for j in i..d {
                if !self.pairing[i][j].is_zero() {
                    pairing.push(serde_json::json!([self.basis[i].label, self.basis[j].label, fmt_q(&self.pairing[i][j])]));
                }
            }
        }
        serde_json::json!({
            "name": self.name,
            "dim_n": self.dim_n,
            "period": fmt_q(self.period.p()),
            "fundamental": self.fundamental_label(),
            "point": self.point_label(),
            "monotone_ratio": self.monotone_ratio.as_ref().map(fmt_q),
            "basis": self.basis,
            "structure": structure,
            "pairing": pairing,
        })
    }

    /// Reads a ring document. Pairs listed once are filled in by
    /// commutativity, unlisted pairs involving `[M]` by the unit axiom, and
    /// all other unlisted pairs are zero. Missing pairing data is read off
    /// the classical products. The result is checked for unity,
    /// commutativity and associativity.
    pub fn from_json(v: &Value) -> Result<Self> {
        let doc: RingDoc = serde_json::from_value(v.clone()).map_err(|e| RingError::Parse(e.to_string()))?;
        let d = doc.basis.len();
        let index: HashMap<&str, usize> = doc.basis.iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
        let look = |l: &str| index.get(l).copied().ok_or_else(|| RingError::UnknownLabel(l.to_string()));
        let fundamental = look(&doc.fundamental)?;
        let point = look(&doc.point)?;
        let mut structure = vec![vec![vec![NovikovElement::zero(); d]; d]; d];
        let mut given = vec![vec![false; d]; d];
        for entry in &doc.structure {
            let (i, j) = (look(&entry.left)?, look(&entry.right)?);
            let mut out = vec![NovikovElement::zero(); d];
            for (label, e, c) in &entry.terms {
                let k = look(label)?;
                let e = serde_q::from_value(e).map_err(RingError::Parse)?;
                let c = serde_q::from_value(c).map_err(RingError::Parse)?;
                out[k] = &out[k] + &NovikovElement::monomial(c, e);
            }
            if given[i][j] || given[j][i] {
                return Err(RingError::InvalidRing(format!("pair ({}, {}) listed twice", entry.left, entry.right)));
            }
            given[i][j] = true;
            given[j][i] = true;
            structure[j][i] = out.clone();
            structure[i][j] = out;
        }
        for i in 0..d {
            if !given[fundamental][i] {
                structure[fundamental][i][i] = NovikovElement::one();
                structure[i][fundamental][i] = NovikovElement::one();
            }
        }
        let pairing = if doc.pairing.is_empty() {
            None
        } else {
            let mut p = vec![vec![Q::zero(); d]; d];
            for (a, b, x) in &doc.pairing {
                let (i, j) = (look(a)?, look(b)?);
                let x = serde_q::from_value(x).map_err(RingError::Parse)?;
                p[i][j] = x.clone();
                p[j][i] = x;
            }
            Some(p)
        };
        let period = serde_q::from_value(&doc.period).map_err(RingError::Parse)?;
        let ratio = match &doc.monotone_ratio {
            Some(Value::Null) | None => None,
            Some(r) => Some(serde_q::from_value(r).map_err(RingError::Parse)?),
        };
        let ring = Self::assemble(
            doc.name.unwrap_or_else(|| "custom".into()),
            doc.basis,
            doc.dim_n,
            period,
            fundamental,
            point,
            structure,
            pairing,
            ratio,
        )?;
        if let Some(b) = ring.basis.iter().find(|b| b.degree % 2 != 0 || b.degree < 0 || b.degree > 2 * ring.dim_n) {
            return Err(RingError::InvalidRing(format!("degree {} of {} is not even in [0, 2n]", b.degree, b.label)));
        }
        if !ring.check_unity() {
            return Err(RingError::InvalidRing("[M] is not a unit".into()));
        }
        if let Some((i, j, k)) = ring.associativity_violation() {
            return Err(RingError::InvalidRing(format!(
                "product is not associative on ({}, {}, {})",
                ring.label(i),
                ring.label(j),
                ring.label(k)
            )));
        }
        Ok(ring)
    }
}

#[derive(Deserialize)]
struct StructureEntry {
    left: String,
    right: String,
    terms: Vec<(String, Value, Value)>,
}

#[derive(Deserialize)]
struct RingDoc {
    name: Option<String>,
    dim_n: i64,
    period: Value,
    fundamental: String,
    point: String,
    #[serde(default)]
    monotone_ratio: Option<Value>,
    basis: Vec<BasisClass>,
    #[serde(default)]
    structure: Vec<StructureEntry>,
    #[serde(default)]
    pairing: Vec<(String, String, Value)>,
}

impl fmt::Display for QuantumRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (n = {}, p = {})", self.name, self.dim_n, fmt_q(self.period.p()))?;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let prod = GradedClass { ring_id: self.id, coords: self.structure[i][j].clone() };
                writeln!(f, "  {} * {} = {}", self.label(i), self.label(j), self.format_class(&prod))?;
            }
        }
        Ok(())
    }
}
