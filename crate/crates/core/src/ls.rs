//! Minmax critical values over finite filtered chain complexes.
//!
//! A [`FilteredComplex`] is a Morse-type complex: every generator carries a
//! degree and a level (its critical value). For a nonzero homology class `a`,
//! `c_LS(a)` is the least level `λ` such that some cycle homologous to `a` is
//! supported on generators of level `≤ λ`. On a finite complex the infimum
//! over sublevel sets is attained at a generator level, which is what is
//! returned.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::qlinalg::{express_in_span, kernel, rank};
use crate::rat::{fmt_q, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("the chain is not a cycle")]
    NotACycle,
    #[error("the class is zero in homology")]
    NullClass,
    #[error("homology in degree {0} is not one-dimensional")]
    NoDistinguishedClass(i64),
    #[error("cannot parse complex: {0}")]
    Parse(String),
}

type Result<T> = std::result::Result<T, ComplexError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
    #[serde(with = "crate::rat::serde_q")]
    pub level: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    generators: Vec<Generator>,
    /// `boundary[t][s]`: coefficient of generator `t` in `∂ s`.
    boundary: Vec<Vec<Q>>,
    top_degree: i64,
}

/// Cycle in one degree, coordinates over that degree's generators in the
/// order they appear in the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    degree: i64,
    cycle: Vec<Q>,
}

impl HomologyClass {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn cycle(&self) -> &[Q] {
        &self.cycle
    }

    pub fn scale(&self, c: &Q) -> Self {
        HomologyClass { degree: self.degree, cycle: self.cycle.iter().map(|x| x * c).collect() }
    }
}

impl FilteredComplex {
    /// `boundary` holds triples `(source, target, coefficient)`.
    pub fn new(generators: Vec<Generator>, boundary: &[(usize, usize, Q)]) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(ComplexError::InvalidComplex("no generators".into()));
        }
        let mut m = vec![vec![Q::zero(); n]; n];
        for (s, t, c) in boundary {
            if *s >= n || *t >= n {
                return Err(ComplexError::InvalidComplex(format!("boundary index out of range: ({s}, {t})")));
            }
            if generators[*t].degree != generators[*s].degree - 1 {
                return Err(ComplexError::InvalidComplex(format!(
                    "∂{} hits {} outside degree {}",
                    generators[*s].label,
                    generators[*t].label,
                    generators[*s].degree - 1
                )));
            }
            m[*t][*s] += c;
        }
        for s in 0..n {
            for t in 0..n {
                let v = (0..n).fold(Q::zero(), |acc, u| acc + &m[t][u] * &m[u][s]);
                if !v.is_zero() {
                    return Err(ComplexError::InvalidComplex(format!(
                        "∂∂{} ≠ 0",
                        generators[s].label
                    )));
                }
            }
        }
        let top_degree = generators.iter().map(|g| g.degree).max().expect("nonempty");
        Ok(FilteredComplex { generators, boundary: m, top_degree })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn top_degree(&self) -> i64 {
        self.top_degree
    }

    pub fn bottom_degree(&self) -> i64 {
        self.generators.iter().map(|g| g.degree).min().expect("nonempty")
    }

    /// Indices of the generators of degree `d`.
    pub fn indices(&self, d: i64) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].degree == d).collect()
    }

    /// Matrix of `∂ : C_d → C_{d-1}` in the degree bases.
    fn boundary_block(&self, d: i64) -> Vec<Vec<Q>> {
        let src = self.indices(d);
        self.indices(d - 1).iter().map(|&t| src.iter().map(|&s| self.boundary[t][s].clone()).collect()).collect()
    }

    /// Columns `∂ e_s` for `s` of degree `d + 1`, as vectors over `C_d`.
    fn boundaries_into(&self, d: i64) -> Vec<Vec<Q>> {
        let tgt = self.indices(d);
        self.indices(d + 1).iter().map(|&s| tgt.iter().map(|&t| self.boundary[t][s].clone()).collect()).collect()
    }

    pub fn with_levels(&self, levels: &[Q]) -> Self {
        let mut c = self.clone();
        for (g, l) in c.generators.iter_mut().zip(levels) {
            g.level = l.clone();
        }
        c
    }

    pub fn levels(&self) -> Vec<Q> {
        self.generators.iter().map(|g| g.level.clone()).collect()
    }

    /// Validated class from a cycle over the degree-`d` generators.
    pub fn class(&self, degree: i64, cycle: Vec<Q>) -> Result<HomologyClass> {
        if cycle.len() != self.indices(degree).len() {
            return Err(ComplexError::InvalidComplex(format!(
                "degree {degree} has {} generators, cycle has {} entries",
                self.indices(degree).len(),
                cycle.len()
            )));
        }
        let bd = self.boundary_block(degree);
        if bd.iter().any(|row| row.iter().zip(&cycle).fold(Q::zero(), |acc, (a, b)| acc + a * b) != Q::zero()) {
            return Err(ComplexError::NotACycle);
        }
        if express_in_span(&self.boundaries_into(degree), &cycle).is_some() {
            return Err(ComplexError::NullClass);
        }
        Ok(HomologyClass { degree, cycle })
    }

    /// Class of a single generator by label.
    pub fn class_of(&self, label: &str) -> Result<HomologyClass> {
        let i = self
            .generators
            .iter()
            .position(|g| g.label == label)
            .ok_or_else(|| ComplexError::InvalidComplex(format!("no generator {label}")))?;
        let d = self.generators[i].degree;
        let cycle = self.indices(d).iter().map(|&j| if j == i { q(1) } else { Q::zero() }).collect();
        self.class(d, cycle)
    }

    /// Cycles whose classes form a basis of `H_d`.
    pub fn homology_basis(&self, d: i64) -> Vec<HomologyClass> {
        let dim = self.indices(d).len();
        let cycles = kernel(&self.boundary_block(d), dim);
        let mut span = self.boundaries_into(d);
        let mut out = Vec::new();
        for z in cycles {
            let r = rank(&span);
            span.push(z.clone());
            if rank(&span) > r {
                out.push(HomologyClass { degree: d, cycle: z });
            } else {
                span.pop();
            }
        }
        out
    }

    pub fn betti(&self, d: i64) -> usize {
        self.homology_basis(d).len()
    }

    /// `[pt]`: the lowest-level degree-0 generator, when `H_0` is `ℚ`.
    pub fn point_class(&self) -> Result<HomologyClass> {
        let d = self.bottom_degree();
        if self.betti(d) != 1 {
            return Err(ComplexError::NoDistinguishedClass(d));
        }
        let idx = self.indices(d);
        let lowest = idx.iter().min_by(|&&a, &&b| self.generators[a].level.cmp(&self.generators[b].level)).unwrap();
        self.class_of(&self.generators[*lowest].label.clone())
    }

    /// `[X]`: the generator of top-degree homology, when it is `ℚ`.
    pub fn fundamental_class(&self) -> Result<HomologyClass> {
        let d = self.top_degree;
        let mut b = self.homology_basis(d);
        if b.len() != 1 {
            return Err(ComplexError::NoDistinguishedClass(d));
        }
        Ok(b.remove(0))
    }

    fn owns(&self, a: &HomologyClass) -> Result<()> {
        self.class(a.degree, a.cycle.clone()).map(|_| ())
    }

    /// `c_LS(a)`: scan the levels of degree-`d` generators upward and stop at
    /// the first `λ` with `a ∈ span{e_i : level_i ≤ λ} + im ∂`.
    pub fn c_ls(&self, a: &HomologyClass) -> Result<Q> {
        self.owns(a)?;
        let idx = self.indices(a.degree);
        let mut levels: Vec<Q> = idx.iter().map(|&i| self.generators[i].level.clone()).collect();
        levels.sort();
        levels.dedup();
        let boundaries = self.boundaries_into(a.degree);
        for lambda in levels {
            let mut span = boundaries.clone();
            for (pos, &i) in idx.iter().enumerate() {
                if self.generators[i].level <= lambda {
                    let mut e = vec![Q::zero(); idx.len()];
                    e[pos] = q(1);
                    span.push(e);
                }
            }
            if express_in_span(&span, &a.cycle).is_some() {
                return Ok(lambda);
            }
        }
        unreachable!("a nonzero class is supported on all generators of its degree")
    }

    /// Independent oracle: minimum over `a + ∂b`, with `b` ranging over all
    /// chains with coefficients in `-range..=range`, of the highest level in
    /// the support. Exponential in the number of generators.
    pub fn brute_force_c_ls(&self, a: &HomologyClass, range: i64) -> Result<Q> {
        self.owns(a)?;
        let idx = self.indices(a.degree);
        let cols = self.boundaries_into(a.degree);
        let mut coeffs = vec![-range; cols.len()];
        let mut best: Option<Q> = None;
        loop {
            let mut v = a.cycle.clone();
            for (c, col) in coeffs.iter().zip(&cols) {
                if *c != 0 {
                    for (x, y) in v.iter_mut().zip(col) {
                        *x += q(*c) * y;
                    }
                }
            }
            let lvl = v
                .iter()
                .zip(&idx)
                .filter(|(x, _)| !x.is_zero())
                .map(|(_, &i)| self.generators[i].level.clone())
                .max()
                .expect("a representative of a nonzero class is nonzero");
            if best.as_ref().is_none_or(|b| lvl < *b) {
                best = Some(lvl);
            }
            // odometer over the coefficient box
            let mut pos = 0;
            loop {
                if pos == coeffs.len() {
                    return Ok(best.expect("at least one representative"));
                }
                if coeffs[pos] < range {
                    coeffs[pos] += 1;
                    break;
                }
                coeffs[pos] = -range;
                pos += 1;
            }
        }
    }

    /// `|c_LS(a)` after shifting levels by `deltas` `− c_LS(a)| ≤ ε`, where
    /// every `|δ_i| ≤ ε` is required.
    pub fn scale_invariance_check(&self, a: &HomologyClass, deltas: &[Q], eps: &Q) -> Result<bool> {
        if eps.is_negative() || deltas.len() != self.generators.len() || deltas.iter().any(|d| d.abs() > *eps) {
            return Err(ComplexError::InvalidComplex("perturbation must have one entry per generator, each within ε".into()));
        }
        let before = self.c_ls(a)?;
        let levels: Vec<Q> = self.generators.iter().zip(deltas).map(|(g, d)| &g.level + d).collect();
        let after = self.with_levels(&levels).c_ls(a)?;
        Ok((after - before).abs() <= *eps)
    }

    /// `c_LS([pt]) ≤ c_LS(a) ≤ c_LS([X])`.
    pub fn sandwich_check(&self, a: &HomologyClass) -> Result<bool> {
        let lo = self.c_ls(&self.point_class()?)?;
        let hi = self.c_ls(&self.fundamental_class()?)?;
        let v = self.c_ls(a)?;
        Ok(lo <= v && v <= hi)
    }

    /// Input JSON: `{generators: [{label, degree, level}], boundary: [[source,
    /// target, coefficient]]}`; sources and targets are labels or indices.
    pub fn from_json(v: &Value) -> Result<Self> {
        let gens: Vec<Generator> = serde_json::from_value(v.get("generators").cloned().unwrap_or(Value::Null))
            .map_err(|e| ComplexError::Parse(e.to_string()))?;
        let find = |x: &Value| -> Result<usize> {
            match x {
                Value::Number(n) => n.as_u64().map(|i| i as usize).ok_or_else(|| ComplexError::Parse(format!("bad index {n}"))),
                Value::String(s) => gens
                    .iter()
                    .position(|g| &g.label == s)
                    .ok_or_else(|| ComplexError::Parse(format!("unknown generator {s}"))),
                other => Err(ComplexError::Parse(format!("bad generator reference {other}"))),
            }
        };
        let mut triples = Vec::new();
        if let Some(bd) = v.get("boundary") {
            let arr = bd.as_array().ok_or_else(|| ComplexError::Parse("boundary must be an array".into()))?;
            for t in arr {
                let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                    ComplexError::Parse("boundary entries are [source, target, coefficient]".into())
                })?;
                let c = crate::rat::serde_q::from_value(&t[2]).map_err(ComplexError::Parse)?;
                triples.push((find(&t[0])?, find(&t[1])?, c));
            }
        }
        Self::new(gens, &triples)
    }

    pub fn to_json(&self) -> Value {
        let mut triples = Vec::new();
        for (t, row) in self.boundary.iter().enumerate() {
            for (s, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    triples.push(serde_json::json!([self.generators[s].label, self.generators[t].label, fmt_q(c)]));
                }
            }
        }
        serde_json::json!({ "generators": self.generators, "boundary": triples })
    }

    /// Named example complexes: `circle`, `sphere`, `torus`,
    /// `sphere-cancel`, `rp2`.
    pub fn preset(name: &str) -> Result<Self> {
        let g = |label: &str, degree: i64, level: i64| Generator { label: label.into(), degree, level: q(level) };
        match name {
            "circle" => Self::new(vec![g("min", 0, 0), g("max", 1, 1)], &[]),
            "sphere" => Self::new(vec![g("min", 0, 0), g("max", 2, 5)], &[]),
            "torus" => Self::new(vec![g("min", 0, 0), g("a", 1, 1), g("b", 1, 2), g("max", 2, 3)], &[]),
            // an extra minimum cancelled by a saddle
            "sphere-cancel" => Self::new(
                vec![g("m", 0, 0), g("m2", 0, 2), g("s", 1, 3), g("max", 2, 5)],
                &[(2, 1, q(1)), (2, 0, q(-1))],
            ),
            "rp2" => Self::new(vec![g("e0", 0, 0), g("e1", 1, 1), g("e2", 2, 2)], &[(2, 1, q(2))]),
            _ => Err(ComplexError::InvalidComplex(format!("unknown preset {name}"))),
        }
    }

    pub const PRESETS: [&'static str; 5] = ["circle", "sphere", "torus", "sphere-cancel", "rp2"];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_and_fundamental() {
        for (name, lo, hi) in [("circle", 0, 1), ("sphere", 0, 5), ("torus", 0, 3), ("sphere-cancel", 0, 5)] {
            let c = FilteredComplex::preset(name).unwrap();
            assert_eq!(c.c_ls(&c.point_class().unwrap()).unwrap(), q(lo), "{name}");
            assert_eq!(c.c_ls(&c.fundamental_class().unwrap()).unwrap(), q(hi), "{name}");
        }
    }

    #[test]
    fn torus_middle_classes() {
        let c = FilteredComplex::preset("torus").unwrap();
        assert_eq!(c.c_ls(&c.class_of("a").unwrap()).unwrap(), q(1));
        assert_eq!(c.c_ls(&c.class_of("b").unwrap()).unwrap(), q(2));
        let ab = c.class(1, vec![q(1), q(1)]).unwrap();
        assert_eq!(c.c_ls(&ab).unwrap(), q(2));
        assert!(c.sandwich_check(&ab).unwrap());
    }

    #[test]
    fn homologous_representative_is_used() {
        let c = FilteredComplex::preset("sphere-cancel").unwrap();
        let high = c.class_of("m2").unwrap();
        assert_eq!(c.c_ls(&high).unwrap(), q(0));
        assert_eq!(c.brute_force_c_ls(&high, 2).unwrap(), q(0));
        assert_eq!(c.betti(0), 1);
        assert_eq!(c.betti(1), 0);
    }

    #[test]
    fn refusals() {
        let c = FilteredComplex::preset("rp2").unwrap();
        assert_eq!(c.class_of("e1"), Err(ComplexError::NullClass));
        assert_eq!(c.class_of("e2"), Err(ComplexError::NotACycle));
        assert!(matches!(c.fundamental_class(), Err(ComplexError::NoDistinguishedClass(2))));
        let g = |l: &str, d| Generator { label: l.into(), degree: d, level: q(0) };
        let bad = FilteredComplex::new(vec![g("a", 0), g("b", 2)], &[(1, 0, q(1))]);
        assert!(matches!(bad, Err(ComplexError::InvalidComplex(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = FilteredComplex::preset("sphere-cancel").unwrap();
        assert_eq!(FilteredComplex::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn shift_moves_value() {
        let c = FilteredComplex::preset("torus").unwrap();
        let a = c.class_of("b").unwrap();
        let shifted = c.with_levels(&c.levels().iter().map(|l| l + q(7)).collect::<Vec<_>>());
        assert_eq!(shifted.c_ls(&a).unwrap(), q(9));
        assert!(c.scale_invariance_check(&a, &vec![q(0); 4], &q(0)).unwrap());
    }
}
