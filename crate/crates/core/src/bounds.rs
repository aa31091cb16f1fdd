//! Closed-form fixed-point lower bounds.
//!
//! Every evaluator takes exact inputs and returns the integer ceiling of an
//! exact rational. Analytic inputs (Hofer norm, spectral norm) are supplied
//! by the caller and never computed here.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat::{ceil_i64, floor_i64, fmt_q, q, qf, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("theta = {theta} is below the period p = {p}")]
    ThetaBelowPeriod { p: String, theta: String },
    #[error("invalid bound input: {0}")]
    InvalidInput(String),
}

type Result<T> = std::result::Result<T, BoundError>;

fn positive(name: &str, x: &Q) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(BoundError::InvalidInput(format!("{name} must be positive, got {}", fmt_q(x))))
    }
}

/// `⌈p · cuplength / Θ⌉`.
pub fn thm_main_bound(p: &Q, theta: &Q, cuplength: u64) -> Result<i64> {
    positive("p", p)?;
    positive("theta", theta)?;
    if cuplength == 0 {
        return Err(BoundError::InvalidInput("cuplength must be positive".into()));
    }
    if theta < p {
        return Err(BoundError::ThetaBelowPeriod { p: fmt_q(p), theta: fmt_q(theta) });
    }
    Ok(ceil_i64(&(p * Q::from_integer(cuplength.into()) / theta)))
}

/// The cuplength when the spectral (or Hofer) norm is strictly below `p`.
pub fn arnold_predicate(p: &Q, norm: &Q, cuplength: u64) -> Result<Option<u64>> {
    positive("p", p)?;
    if norm.is_negative() {
        return Err(BoundError::InvalidInput("norm must be nonnegative".into()));
    }
    Ok((norm < p).then_some(cuplength))
}

/// `max_g ⌈p · qcl(g) / (p + g + ‖φ‖)⌉` over a finite table; a certified lower
/// bound for the supremum over all `g` and deformations.
pub fn thm_bcl_bound(p: &Q, qcl: &BTreeMap<Q, u64>, hofer: &Q) -> Result<i64> {
    positive("p", p)?;
    if hofer.is_negative() {
        return Err(BoundError::InvalidInput("Hofer norm must be nonnegative".into()));
    }
    let mut best: Option<i64> = None;
    for (g, l) in qcl {
        let den = p + g + hofer;
        if !den.is_positive() {
            return Err(BoundError::InvalidInput(format!("p + g + ‖φ‖ ≤ 0 at g = {}", fmt_q(g))));
        }
        let v = ceil_i64(&(p * Q::from_integer((*l).into()) / den));
        best = Some(best.map_or(v, |b| b.max(v)));
    }
    best.ok_or_else(|| BoundError::InvalidInput("empty cuplength table".into()))
}

/// `2N / (2n − deg a)` as a rational and its ceiling.
pub fn thm_schtype_bound(chern_n: u64, dim2n: u64, deg_a: u64) -> Result<(Q, i64)> {
    if chern_n == 0 || !dim2n.is_multiple_of(2) || deg_a >= dim2n {
        return Err(BoundError::InvalidInput(format!(
            "need N ≥ 1, even 2n and deg a < 2n (got N = {chern_n}, 2n = {dim2n}, deg a = {deg_a})"
        )));
    }
    let raw = Q::new((2 * chern_n).into(), (dim2n - deg_a).into());
    let c = ceil_i64(&raw);
    Ok((raw, c))
}

/// `(⌈p l / ⟨ω,A⟩⌉, ⌈2p / max_i codim_i · ⟨c_1,A⟩/⟨ω,A⟩⌉)`, the second only
/// when `⟨c_1,A⟩` and the codimensions `2n − deg a_i` are given.
pub fn thm_onept_bounds(p: &Q, l: u64, area: &Q, c1a: Option<i64>, codims: Option<&[u64]>) -> Result<(i64, Option<i64>)> {
    positive("p", p)?;
    positive("area", area)?;
    if l < 2 {
        return Err(BoundError::InvalidInput("l must be at least 2".into()));
    }
    let b1 = ceil_i64(&(p * Q::from_integer(l.into()) / area));
    let b2 = match (c1a, codims) {
        (Some(c), Some(cs)) => {
            let m = *cs.iter().max().ok_or_else(|| BoundError::InvalidInput("empty codimension list".into()))?;
            if m == 0 {
                return Err(BoundError::InvalidInput("codimensions must be positive".into()));
            }
            Some(ceil_i64(&(q(2) * p / Q::from_integer(m.into()) * q(c) / area)))
        }
        _ => None,
    };
    Ok((b1, b2))
}

/// `⌈l / g⌉` for a factorization of length `l` and order `g`.
pub fn pfqf_bound(l: u64, g: u64) -> Result<i64> {
    if l == 0 || g == 0 {
        return Err(BoundError::InvalidInput("l and g must be positive".into()));
    }
    Ok(ceil_i64(&Q::new(l.into(), g.into())))
}

/// `⌈p · gcd(m, k_1, …) · cupl(M̃) / (m · Θ)⌉` for blow-ups at balls of
/// weights `k_i p / m`.
pub fn blowup_bound(p: &Q, theta: &Q, m: u64, ks: &[u64], cuplength_tilde: u64) -> Result<i64> {
    positive("p", p)?;
    positive("theta", theta)?;
    if m == 0 || ks.is_empty() || ks.contains(&0) {
        return Err(BoundError::InvalidInput("m and every k_i must be positive, with at least one point".into()));
    }
    let g = ks.iter().fold(m, |acc, k| acc.gcd(k));
    let num = p * Q::from_integer((g * cuplength_tilde).into());
    Ok(ceil_i64(&(num / (Q::from_integer(m.into()) * theta))))
}

/// Closed forms for monotone flag manifolds, evaluated literally.
pub mod cases {
    use super::*;

    /// `ℂP^{n-1}`.
    pub fn case1(n: u64) -> i64 {
        n as i64
    }

    /// `Gr(k, n)`: `⌈n (k(n−k)+1) / (n min{k, n−k})⌉`.
    pub fn case2(k: u64, n: u64) -> i64 {
        let (k, n) = (k as i64, n as i64);
        ceil_i64(&qf(n * (k * (n - k) + 1), n * k.min(n - k)))
    }

    /// `F(1, n−1, n)`: `⌈(n−1) · 2(n−2) / (2(n−1))⌉`.
    pub fn case3(n: u64) -> i64 {
        let n = n as i64;
        ceil_i64(&qf((n - 1) * 2 * (n - 2), 2 * (n - 1)))
    }

    /// `U(km)/U(k)^m`, ceiling form `⌈2k(k²m(m−1)/2 + 1) / (2k(m−h)h)⌉`,
    /// `h = ⌊m/2⌋`.
    pub fn case4_ceiling(k: u64, m: u64) -> i64 {
        let (k, m) = (k as i64, m as i64);
        let h = m / 2;
        ceil_i64(&qf(2 * k * (k * k * m * (m - 1) / 2 + 1), 2 * k * (m - h) * h))
    }

    /// `U(km)/U(k)^m`, simplified form `2k² − ⌊(k²h − 1) / (h(m−h))⌋`.
    pub fn case4(k: u64, m: u64) -> i64 {
        let (k, m) = (k as i64, m as i64);
        let h = m / 2;
        2 * k * k - floor_i64(&qf(k * k * h - 1, h * (m - h)))
    }

    /// Complete flags `F_n`: `⌈2(n(n−1)/2 + 1) / (2(n−h)h)⌉`.
    pub fn case5(n: u64) -> i64 {
        let n = n as i64;
        let h = n / 2;
        ceil_i64(&qf(2 * (n * (n - 1) / 2 + 1), 2 * (n - h) * h))
    }
}

/// JSON form of the inputs shared by the evaluators.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct BoundInputs {
    #[serde(default, with = "opt_q")]
    pub p: Option<Q>,
    #[serde(default, with = "opt_q")]
    pub theta: Option<Q>,
    #[serde(default)]
    pub cuplength: Option<u64>,
    #[serde(default, with = "opt_q")]
    pub hofer_norm: Option<Q>,
    #[serde(default)]
    pub qcl_table: Option<BTreeMap<String, u64>>,
    #[serde(default)]
    pub chern_n: Option<u64>,
    #[serde(default)]
    pub deg_a: Option<u64>,
    #[serde(default)]
    pub dim2n: Option<u64>,
}

mod opt_q {
    use crate::rat::{fmt_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&fmt_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let v = Option::<serde_json::Value>::deserialize(d)?;
        v.map(|v| crate::rat::serde_q::from_value(&v).map_err(serde::de::Error::custom)).transpose()
    }
}

impl BoundInputs {
    pub fn qcl(&self) -> Result<BTreeMap<Q, u64>> {
        let t = self.qcl_table.as_ref().ok_or_else(|| BoundError::InvalidInput("qcl_table missing".into()))?;
        t.iter()
            .map(|(g, l)| crate::rat::parse_q(g).map(|g| (g, *l)).map_err(|e| BoundError::InvalidInput(e.to_string())))
            .collect()
    }

    pub fn require_q(&self, name: &str) -> Result<Q> {
        let v = match name {
            "p" => &self.p,
            "theta" => &self.theta,
            "hofer_norm" => &self.hofer_norm,
            _ => &None,
        };
        v.clone().ok_or_else(|| BoundError::InvalidInput(format!("{name} missing")))
    }

    pub fn hofer_or_zero(&self) -> Q {
        self.hofer_norm.clone().unwrap_or_else(Q::zero)
    }
}
