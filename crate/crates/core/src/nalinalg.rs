//! Non-Archimedean linear algebra over the Novikov field.
//!
//! A [`FilteredSpace`] is `Λ^n` with an orthogonal reference basis
//! `e_1..e_n` of declared levels, so that
//! `ℓ(Σ a_i e_i) = max_i (level_i + ν(a_i))`.
//!
//! A family is orthogonal when `ℓ(Σ α_i w_i) = max_i ℓ(α_i w_i)` for all
//! coefficients. Because exponents range over all of ℚ, this is decided by
//! one finite check: the leading-coefficient vectors of the family are
//! linearly independent over ℚ (see [`leading_certificate`]). The leading
//! vector of `v` collects, in coordinate `i`, the coefficient of
//! `T^{level_i - ℓ(v)}` in `v_i`.
//!
//! Entries are treated as exact finite sums; truncated elements are refused.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::novikov::{NovikovElement, Valuation};
use crate::qlinalg::{express_in_span, rank};
use crate::rat::Q;

/// Upper bound on reduction steps for a single vector; reductions terminate
/// in theory, this only guards against pathological input sizes.
const MAX_REDUCTION_STEPS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("input vectors are linearly dependent over Λ")]
    DependentInput,
    #[error("ξ is not in the kernel of L")]
    NotInKernel,
    #[error("ξ is the zero vector")]
    ZeroXi,
    #[error("truncated Novikov entries are not accepted in linear algebra")]
    TruncatedEntry,
    #[error("reduction did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("cannot parse matrix entry: {0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, LinalgError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredSpace {
    levels: Vec<Q>,
}

impl FilteredSpace {
    pub fn new(levels: Vec<Q>) -> Self {
        FilteredSpace { levels }
    }

    /// All reference levels zero.
    pub fn flat(dim: usize) -> Self {
        FilteredSpace { levels: vec![Q::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Q] {
        &self.levels
    }

    /// The `i`-th reference basis vector.
    pub fn unit(&self, i: usize) -> LambdaVector {
        let mut v = LambdaVector::zero(self.dim());
        v.coords[i] = NovikovElement::one();
        v
    }

    fn check(&self, v: &LambdaVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(LinalgError::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        if v.coords.iter().any(|c| c.cutoff().is_some()) {
            return Err(LinalgError::TruncatedEntry);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaVector {
    pub coords: Vec<NovikovElement>,
}

impl LambdaVector {
    pub fn new(coords: Vec<NovikovElement>) -> Self {
        LambdaVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        LambdaVector { coords: vec![NovikovElement::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(NovikovElement::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        LambdaVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LambdaVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &NovikovElement) -> Self {
        LambdaVector { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    fn scale_monomial(&self, coef: &Q, shift: &Q) -> Self {
        LambdaVector { coords: self.coords.iter().map(|a| a.scale(coef).shift(shift)).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<NovikovElement>>,
}

impl LambdaMatrix {
    pub fn new(entries: Vec<Vec<NovikovElement>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(bad) = entries.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch { expected: cols, got: bad.len() });
        }
        if entries.iter().flatten().any(|e| e.cutoff().is_some()) {
            return Err(LinalgError::TruncatedEntry);
        }
        Ok(LambdaMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LambdaMatrix { rows, cols, entries: vec![vec![NovikovElement::zero(); cols]; rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &NovikovElement {
        &self.entries[i][j]
    }

    pub fn apply(&self, v: &LambdaVector) -> Result<LambdaVector> {
        if v.dim() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, got: v.dim() });
        }
        let coords = self
            .entries
            .iter()
            .map(|row| row.iter().zip(&v.coords).fold(NovikovElement::zero(), |acc, (a, x)| &acc + &(a * x)))
            .collect();
        Ok(LambdaVector { coords })
    }

    /// Row-major text form, one entry per cell in the Novikov grammar.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }

    pub fn from_text_rows(rows: &[Vec<String>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<NovikovElement>().map_err(|e| LinalgError::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LambdaMatrix::new(entries)
    }
}

/// `ℓ(v) = max_i (level_i + ν(v_i))`.
pub fn ell(space: &FilteredSpace, v: &LambdaVector) -> Result<Valuation> {
    space.check(v)?;
    Ok(ell_unchecked(space, v))
}

fn ell_unchecked(space: &FilteredSpace, v: &LambdaVector) -> Valuation {
    space
        .levels
        .iter()
        .zip(&v.coords)
        .map(|(l, c)| c.valuation().shifted(l))
        .max()
        .unwrap_or(Valuation::NegInfinity)
}

/// `(ℓ(v), leading vector)` for nonzero `v`.
pub fn leading_vector(space: &FilteredSpace, v: &LambdaVector) -> Option<(Q, Vec<Q>)> {
    let l = ell_unchecked(space, v).finite()?.clone();
    let lead = space.levels.iter().zip(&v.coords).map(|(lv, c)| c.coeff(&(lv - &l))).collect();
    Some((l, lead))
}

/// Deterministic orthogonality certificate: every vector nonzero and the
/// leading vectors independent over ℚ.
pub fn leading_certificate(space: &FilteredSpace, family: &[LambdaVector]) -> bool {
    let mut leads = Vec::with_capacity(family.len());
    for v in family {
        if space.check(v).is_err() {
            return false;
        }
        match leading_vector(space, v) {
            Some((_, lead)) => leads.push(lead),
            None => return false,
        }
    }
    rank(&leads) == family.len()
}

/// Fraction-free (Bareiss) row echelon form over `ℚ[T^{±1/D}]`.
/// Returns the echelon rows and pivot columns.
fn echelon(rows: &[Vec<NovikovElement>], cols: usize) -> (Vec<Vec<NovikovElement>>, Vec<usize>) {
    let mut a = rows.to_vec();
    let n = a.len();
    let mut prev = NovikovElement::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n {
            for j in c + 1..cols {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step is exact");
            }
            a[i][c] = NovikovElement::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank over Λ of a family of vectors.
pub fn lambda_rank(vectors: &[LambdaVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let rows: Vec<_> = vectors.iter().map(|v| v.coords.clone()).collect();
    echelon(&rows, first.dim()).1.len()
}

/// Basis of `ker L` with Laurent-polynomial coordinates.
pub fn kernel_basis(l: &LambdaMatrix) -> Vec<LambdaVector> {
    let (a, pivots) = echelon(&l.entries, l.cols);
    let mut out = Vec::new();
    for f in (0..l.cols).filter(|c| !pivots.contains(c)) {
        let mut x = LambdaVector::zero(l.cols);
        x.coords[f] = NovikovElement::one();
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let s = (pc + 1..l.cols).fold(NovikovElement::zero(), |acc, j| &acc + &(&a[i][j] * &x.coords[j]));
            x = x.scale(&a[i][pc]);
            x.coords[pc] = -&s;
        }
        out.push(strip_monomial_factor(x));
    }
    out
}

/// Divides out the largest common monomial `T^e` so coordinates stay small.
fn strip_monomial_factor(v: LambdaVector) -> LambdaVector {
    let min = v.coords.iter().filter_map(|c| c.min_exponent()).min().cloned();
    match min {
        Some(e) => LambdaVector { coords: v.coords.iter().map(|c| c.shift(&-e.clone())).collect() },
        None => v,
    }
}

struct Chosen {
    level: Q,
    lead: Vec<Q>,
    index: usize,
}

/// Subtracts Λ-multiples of `basis[c.index]` from `u` until the leading
/// vector of `u` is independent of the chosen leads.
fn reduce(space: &FilteredSpace, u: &mut LambdaVector, basis: &[LambdaVector], chosen: &[Chosen]) -> Result<()> {
    let leads: Vec<Vec<Q>> = chosen.iter().map(|c| c.lead.clone()).collect();
    for _ in 0..MAX_REDUCTION_STEPS {
        let Some((l, lead)) = leading_vector(space, u) else {
            return Err(LinalgError::DependentInput);
        };
        let Some(coef) = express_in_span(&leads, &lead) else {
            return Ok(());
        };
        for (c, ch) in coef.iter().zip(chosen) {
            if !c.is_zero() {
                *u = u.sub(&basis[ch.index].scale_monomial(c, &(&ch.level - &l)));
            }
        }
    }
    Err(LinalgError::NonTermination(MAX_REDUCTION_STEPS))
}

fn gram_schmidt_inner(space: &FilteredSpace, vectors: &[LambdaVector], pin_first: bool) -> Result<Vec<LambdaVector>> {
    for v in vectors {
        space.check(v)?;
    }
    if lambda_rank(vectors) != vectors.len() {
        return Err(LinalgError::DependentInput);
    }
    let mut work = vectors.to_vec();
    let mut remaining: Vec<usize> = (0..work.len()).collect();
    let mut chosen: Vec<Chosen> = Vec::new();
    while !remaining.is_empty() {
        let pick = if pin_first && chosen.is_empty() {
            0
        } else {
            // max ℓ, ties to the lowest index
            let mut best = 0;
            for k in 1..remaining.len() {
                if ell_unchecked(space, &work[remaining[k]]) > ell_unchecked(space, &work[remaining[best]]) {
                    best = k;
                }
            }
            best
        };
        let idx = remaining.remove(pick);
        let (level, lead) = leading_vector(space, &work[idx]).ok_or(LinalgError::DependentInput)?;
        chosen.push(Chosen { level, lead, index: idx });
        for &j in &remaining {
            let mut u = work[j].clone();
            reduce(space, &mut u, &work, &chosen)?;
            work[j] = u;
        }
    }
    Ok(work)
}

/// Orthogonal family spanning the same Λ-subspace, in input order.
///
/// Pivot: the remaining vector of largest `ℓ`, ties broken by lowest index.
/// The other vectors are then reduced until their leading vectors are
/// independent of those already chosen. Vectors are only modified by adding
/// Λ-multiples of earlier pivots, so the change of basis is unitriangular.
pub fn gram_schmidt(space: &FilteredSpace, vectors: &[LambdaVector]) -> Result<Vec<LambdaVector>> {
    gram_schmidt_inner(space, vectors, false)
}

/// Like [`gram_schmidt`] but `vectors[0]` is taken as the first pivot and
/// returned unchanged.
pub fn gram_schmidt_pinned(space: &FilteredSpace, vectors: &[LambdaVector]) -> Result<Vec<LambdaVector>> {
    gram_schmidt_inner(space, vectors, true)
}

/// Reference basis vectors completing an orthogonal family `family` to an
/// orthogonal basis of the space.
fn reference_completion(space: &FilteredSpace, family: &[LambdaVector]) -> Vec<LambdaVector> {
    let mut leads: Vec<Vec<Q>> = family.iter().filter_map(|v| leading_vector(space, v)).map(|(_, l)| l).collect();
    let mut out = Vec::new();
    for i in 0..space.dim() {
        let mut e = vec![Q::zero(); space.dim()];
        e[i] = Q::one();
        leads.push(e);
        if rank(&leads) == leads.len() {
            out.push(space.unit(i));
        } else {
            leads.pop();
        }
    }
    out
}

/// An orthogonal complement `W` of `span(subspace)`, built from reference
/// basis vectors.
pub fn orthogonal_complement(space: &FilteredSpace, subspace: &[LambdaVector]) -> Result<Vec<LambdaVector>> {
    let orth = gram_schmidt(space, subspace)?;
    Ok(reference_completion(space, &orth))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Svd {
    pub basis_v: Vec<LambdaVector>,
    pub basis_w: Vec<LambdaVector>,
    pub rank: usize,
}

/// Orthogonal bases adapted to `L` with `ξ` as the first kernel vector.
///
/// `basis_v[..r]` is mapped by `L` onto the orthogonal family
/// `basis_w[..r]`, `basis_v[r] = ξ`, and `basis_v[r..]` is an orthogonal
/// basis of `ker L`. The levels of `basis_w` are not normalised.
pub fn svd_with_kernel_vector(
    l: &LambdaMatrix,
    space_v: &FilteredSpace,
    space_w: &FilteredSpace,
    xi: &LambdaVector,
) -> Result<Svd> {
    if space_v.dim() != l.cols {
        return Err(LinalgError::DimensionMismatch { expected: l.cols, got: space_v.dim() });
    }
    if space_w.dim() != l.rows {
        return Err(LinalgError::DimensionMismatch { expected: l.rows, got: space_w.dim() });
    }
    space_v.check(xi)?;
    if xi.is_zero() {
        return Err(LinalgError::ZeroXi);
    }
    if !l.apply(xi)?.is_zero() {
        return Err(LinalgError::NotInKernel);
    }

    // kernel basis containing ξ, made orthogonal with ξ first
    let mut kernel = vec![xi.clone()];
    for k in kernel_basis(l) {
        kernel.push(k);
        if lambda_rank(&kernel) < kernel.len() {
            kernel.pop();
        }
    }
    let kernel = gram_schmidt_pinned(space_v, &kernel)?;
    let r = l.cols - kernel.len();

    let mut vs = reference_completion(space_v, &kernel);
    let mut images: Vec<LambdaVector> = vs.iter().map(|v| l.apply(v)).collect::<Result<_>>()?;
    let stretch = |v: &LambdaVector, lv: &LambdaVector| -> Q {
        let a = ell_unchecked(space_w, lv).finite().cloned().expect("L is injective on the complement");
        let b = ell_unchecked(space_v, v).finite().cloned().expect("nonzero vector");
        a - b
    };

    let mut remaining: Vec<usize> = (0..vs.len()).collect();
    let mut chosen: Vec<Chosen> = Vec::new();
    while !remaining.is_empty() {
        let mut best = 0;
        for k in 1..remaining.len() {
            if stretch(&vs[remaining[k]], &images[remaining[k]]) > stretch(&vs[remaining[best]], &images[remaining[best]]) {
                best = k;
            }
        }
        let q = remaining.remove(best);
        let (level, lead) = leading_vector(space_w, &images[q]).ok_or(LinalgError::DependentInput)?;
        chosen.push(Chosen { level, lead, index: q });
        let leads: Vec<Vec<Q>> = chosen.iter().map(|c| c.lead.clone()).collect();
        for &j in &remaining {
            let mut steps = 0;
            loop {
                let (lj, lead_j) = leading_vector(space_w, &images[j]).ok_or(LinalgError::DependentInput)?;
                let Some(coef) = express_in_span(&leads, &lead_j) else {
                    break;
                };
                for (c, ch) in coef.iter().zip(&chosen) {
                    if !c.is_zero() {
                        let shift = &ch.level - &lj;
                        vs[j] = vs[j].sub(&vs[ch.index].scale_monomial(c, &shift));
                        images[j] = images[j].sub(&images[ch.index].scale_monomial(c, &shift));
                    }
                }
                steps += 1;
                if steps > MAX_REDUCTION_STEPS {
                    return Err(LinalgError::NonTermination(MAX_REDUCTION_STEPS));
                }
            }
        }
    }

    let mut basis_w = images.clone();
    basis_w.extend(reference_completion(space_w, &images));
    let mut basis_v = vs;
    basis_v.extend(kernel);
    Ok(Svd { basis_v, basis_w, rank: r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn t(c: i64, e: i64) -> NovikovElement {
        NovikovElement::monomial(q(c), q(e))
    }

    fn vecn(cs: Vec<NovikovElement>) -> LambdaVector {
        LambdaVector::new(cs)
    }

    #[test]
    fn ell_examples() {
        let s = FilteredSpace::new(vec![q(0), q(3)]);
        assert_eq!(ell(&s, &LambdaVector::zero(2)).unwrap(), Valuation::NegInfinity);
        assert_eq!(ell(&s, &s.unit(1)).unwrap(), Valuation::Finite(q(3)));
        let flat = FilteredSpace::flat(2);
        let p = 2;
        assert_eq!(ell(&flat, &vecn(vec![t(1, p), t(1, 0)])).unwrap(), Valuation::Finite(q(0)));
        assert!(ell(&flat, &LambdaVector::zero(3)).is_err());
    }

    #[test]
    fn gram_schmidt_examples() {
        let s = FilteredSpace::flat(2);
        let e1 = s.unit(0);
        let e2 = s.unit(1);
        assert_eq!(gram_schmidt(&s, &[e1.clone(), e2.clone()]).unwrap(), vec![e1.clone(), e2.clone()]);
        let f = e1.add(&e2);
        let out = gram_schmidt(&s, &[f.clone(), e2.clone()]).unwrap();
        assert_eq!(out[0], f);
        assert!(leading_certificate(&s, &out));
        assert_eq!(lambda_rank(&out), 2);
        assert_eq!(gram_schmidt(&s, std::slice::from_ref(&f)).unwrap(), vec![f.clone()]);
        assert_eq!(gram_schmidt(&s, &[f.clone(), f.clone()]), Err(LinalgError::DependentInput));
    }

    #[test]
    fn complement_examples() {
        let s = FilteredSpace::flat(2);
        assert!(orthogonal_complement(&s, &[s.unit(0), s.unit(1)]).unwrap().is_empty());
        let w = orthogonal_complement(&s, &[s.unit(0)]).unwrap();
        assert_eq!(w, vec![s.unit(1)]);
        assert_eq!(orthogonal_complement(&s, &[]).unwrap(), vec![s.unit(0), s.unit(1)]);
        let skew = vecn(vec![t(1, 0), t(1, 0)]);
        let w = orthogonal_complement(&s, std::slice::from_ref(&skew)).unwrap();
        assert_eq!(w.len(), 1);
        assert!(leading_certificate(&s, &[skew, w[0].clone()]));
    }

    #[test]
    fn svd_projection() {
        let l = LambdaMatrix::new(vec![vec![t(1, 0), NovikovElement::zero()]]).unwrap();
        let v = FilteredSpace::flat(2);
        let w = FilteredSpace::flat(1);
        let out = svd_with_kernel_vector(&l, &v, &w, &v.unit(1)).unwrap();
        assert_eq!(out.rank, 1);
        assert_eq!(out.basis_v, vec![v.unit(0), v.unit(1)]);
        assert_eq!(out.basis_w, vec![w.unit(0)]);
    }

    #[test]
    fn svd_zero_map() {
        let l = LambdaMatrix::zero(2, 2);
        let v = FilteredSpace::flat(2);
        let xi = vecn(vec![t(1, 1), t(2, 0)]);
        let out = svd_with_kernel_vector(&l, &v, &FilteredSpace::flat(2), &xi).unwrap();
        assert_eq!(out.rank, 0);
        assert_eq!(out.basis_v[0], xi);
        assert!(leading_certificate(&v, &out.basis_v));
    }

    #[test]
    fn svd_refusals() {
        let l = LambdaMatrix::new(vec![vec![t(1, 0), NovikovElement::zero()]]).unwrap();
        let v = FilteredSpace::flat(2);
        let w = FilteredSpace::flat(1);
        assert_eq!(svd_with_kernel_vector(&l, &v, &w, &v.unit(0)), Err(LinalgError::NotInKernel));
        assert_eq!(svd_with_kernel_vector(&l, &v, &w, &LambdaVector::zero(2)), Err(LinalgError::ZeroXi));
    }

    #[test]
    fn kernel_of_rank_two() {
        // rows (1, T, 0), (0, 1, T): kernel spanned by (T^2, -T, 1)
        let l = LambdaMatrix::new(vec![
            vec![t(1, 0), t(1, 1), NovikovElement::zero()],
            vec![NovikovElement::zero(), t(1, 0), t(1, 1)],
        ])
        .unwrap();
        let k = kernel_basis(&l);
        assert_eq!(k.len(), 1);
        assert!(l.apply(&k[0]).unwrap().is_zero());
    }

    #[test]
    fn matrix_text_round_trip() {
        let l = LambdaMatrix::new(vec![vec![t(1, 0), t(-2, 3)], vec![NovikovElement::zero(), t(1, -1)]]).unwrap();
        let rows = l.to_text_rows();
        assert_eq!(rows[0][1], "-2*T^(3)");
        assert_eq!(LambdaMatrix::from_text_rows(&rows).unwrap(), l);
    }
}
