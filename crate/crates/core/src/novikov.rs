//! Novikov ring arithmetic over rational exponents.
//!
//! A [`NovikovElement`] is a finite sum `Σ a_i T^{λ_i}` with exact rational
//! coefficients and exponents, optionally followed by `O(T^c)` recording that
//! every term of exponent `>= c` was discarded. Finite sums with a declared
//! truncation order are enough for everything downstream: structure
//! constants of presented rings have finite support, and inverses and
//! exponentials are only ever needed up to a fixed order.
//!
//! Invariants:
//! - no stored coefficient is zero
//! - if `cutoff` is set, every stored exponent is `< cutoff`
//!
//! The valuation is `ν(Σ a_i T^{λ_i}) = max{-λ_i | a_i ≠ 0}`, with
//! `ν(0) = -∞`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rat::{fmt_q, parse_q, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("exp is only defined without a constant term (found coefficient {0} at T^0)")]
    ConstantTerm(String),
    #[error("element is outside Λ₀: exponent {0} is negative")]
    Domain(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("period must be positive, got {0}")]
    NonPositivePeriod(String),
    #[error("cutoff must be positive, got {0}")]
    NonPositiveCutoff(String),
    #[error("cannot parse Novikov element: {0}")]
    Parse(String),
}

/// Minimal symplectic period `p`; the period group is `p·ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodLattice {
    p: Q,
}

impl PeriodLattice {
    pub fn new(p: Q) -> Result<Self, NovikovError> {
        if !p.is_positive() {
            return Err(NovikovError::NonPositivePeriod(fmt_q(&p)));
        }
        Ok(PeriodLattice { p })
    }

    pub fn p(&self) -> &Q {
        &self.p
    }

    /// `g / p` when `g` lies in the lattice.
    pub fn index_of(&self, g: &Q) -> Option<BigInt> {
        let r = g / &self.p;
        r.is_integer().then(|| r.to_integer())
    }
}

/// Value of ν (or of a filtration function ℓ); `NegInfinity` only for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Valuation {
    NegInfinity,
    Finite(Q),
}

impl Valuation {
    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::NegInfinity => None,
        }
    }

    /// `ν(a) + ν(b)`, with `-∞` absorbing.
    pub fn plus(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::NegInfinity,
        }
    }

    pub fn shifted(&self, by: &Q) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a + by),
            Valuation::NegInfinity => Valuation::NegInfinity,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::NegInfinity, Valuation::NegInfinity) => Ordering::Equal,
            (Valuation::NegInfinity, _) => Ordering::Less,
            (_, Valuation::NegInfinity) => Ordering::Greater,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::NegInfinity => write!(f, "-inf"),
            Valuation::Finite(v) => write!(f, "{}", fmt_q(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NovikovElement {
    terms: BTreeMap<Q, Q>,
    cutoff: Option<Q>,
}

fn min_opt(a: Option<Q>, b: Option<Q>) -> Option<Q> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x <= y { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

impl NovikovElement {
    pub fn zero() -> Self {
        NovikovElement::default()
    }

    pub fn one() -> Self {
        Self::monomial(q(1), q(0))
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, q(0))
    }

    /// `coef · T^exponent`.
    pub fn monomial(coef: Q, exponent: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exponent, coef);
        }
        NovikovElement { terms, cutoff: None }
    }

    /// `T^exponent`.
    pub fn t_pow(exponent: Q) -> Self {
        Self::monomial(q(1), exponent)
    }

    /// Builds an element from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed, zero coefficients dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Q, Q)>) -> Self {
        let mut out = NovikovElement::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Attaches a truncation order, discarding every term at or above it.
    pub fn with_cutoff(mut self, cutoff: Q) -> Self {
        let c = min_opt(self.cutoff.take(), Some(cutoff)).unwrap();
        self.terms.retain(|e, _| *e < c);
        self.cutoff = Some(c);
        self
    }

    /// Drops the truncation marker without touching the stored terms.
    pub fn without_cutoff(mut self) -> Self {
        self.cutoff = None;
        self
    }

    fn add_term(&mut self, exponent: Q, coef: Q) {
        if coef.is_zero() {
            return;
        }
        if let Some(c) = &self.cutoff {
            if exponent >= *c {
                return;
            }
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(Q::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for an exact (untruncated) zero.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.cutoff.is_none()
    }

    pub fn cutoff(&self) -> Option<&Q> {
        self.cutoff.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exponent: &Q) -> Q {
        self.terms.get(exponent).cloned().unwrap_or_else(Q::zero)
    }

    pub fn min_exponent(&self) -> Option<&Q> {
        self.terms.keys().next()
    }

    pub fn max_exponent(&self) -> Option<&Q> {
        self.terms.keys().next_back()
    }

    /// Lowest-exponent term `(exponent, coefficient)`.
    pub fn leading_term(&self) -> Option<(&Q, &Q)> {
        self.terms.iter().next()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exponent below which every coefficient is known: the lowest stored
    /// exponent, else the cutoff, else `None` for an exact zero.
    fn low(&self) -> Option<Q> {
        self.min_exponent().cloned().or_else(|| self.cutoff.clone())
    }

    pub fn valuation(&self) -> Valuation {
        match self.min_exponent() {
            Some(e) => Valuation::Finite(-e.clone()),
            None => Valuation::NegInfinity,
        }
    }

    /// Membership in Λ₀ (all exponents nonnegative).
    pub fn in_lambda0(&self) -> bool {
        self.min_exponent().is_none_or(|e| !e.is_negative())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return NovikovElement { terms: BTreeMap::new(), cutoff: self.cutoff.clone() };
        }
        NovikovElement {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    /// Multiplication by `T^by`.
    pub fn shift(&self, by: &Q) -> Self {
        NovikovElement {
            terms: self.terms.iter().map(|(e, a)| (e + by, a.clone())).collect(),
            cutoff: self.cutoff.as_ref().map(|c| c + by),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let cutoff = min_opt(self.cutoff.clone(), other.cutoff.clone());
        let mut out = NovikovElement { terms: BTreeMap::new(), cutoff };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    /// Cauchy product. A truncated factor `x + O(T^c)` contributes an
    /// unknown part starting at `c + low(other)`.
    pub fn mul(&self, other: &Self) -> Self {
        let c1 = match (&self.cutoff, other.low()) {
            (Some(c), Some(l)) => Some(c + l),
            _ => None,
        };
        let c2 = match (&other.cutoff, self.low()) {
            (Some(c), Some(l)) => Some(c + l),
            _ => None,
        };
        let cutoff = min_opt(c1, c2);
        let mut out = NovikovElement { terms: BTreeMap::new(), cutoff };
        for (e1, a1) in &self.terms {
            for (e2, a2) in &other.terms {
                out.add_term(e1 + e2, a1 * a2);
            }
        }
        out
    }

    /// Truncated exponential `Σ_{k≥0} a^k / k!` up to `cutoff`.
    ///
    /// Requires every exponent to be strictly positive: `e^c` for a nonzero
    /// rational constant `c` is not rational.
    pub fn exp_truncated(&self, cutoff: &Q) -> Result<Self, NovikovError> {
        if !cutoff.is_positive() {
            return Err(NovikovError::NonPositiveCutoff(fmt_q(cutoff)));
        }
        if let Some(e) = self.min_exponent() {
            if e.is_negative() {
                return Err(NovikovError::Domain(fmt_q(e)));
            }
            if e.is_zero() {
                return Err(NovikovError::ConstantTerm(fmt_q(&self.coeff(e))));
            }
        }
        let mut target = cutoff.clone();
        if let Some(c) = &self.cutoff {
            if *c < target {
                target = c.clone();
            }
        }
        let base = self.clone().without_cutoff().with_cutoff(target.clone());
        let mut result = NovikovElement::one().with_cutoff(target.clone());
        let mut power = NovikovElement::one().with_cutoff(target.clone());
        let mut k: i64 = 1;
        loop {
            power = power.mul(&base).with_cutoff(target.clone()).scale(&Q::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            result = result.add(&power);
            k += 1;
        }
        Ok(result.without_cutoff().with_cutoff(target))
    }

    /// Inverse up to (but excluding) exponent `cutoff`.
    ///
    /// Writes `a = c·T^e·(1 + r)` with `r` of positive exponents and sums the
    /// geometric series for `(1 + r)^{-1}`. Monomials invert exactly.
    pub fn invert_truncated(&self, cutoff: &Q) -> Result<Self, NovikovError> {
        let (e, c) = match self.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(NovikovError::ZeroDivision),
        };
        let lead_inv = NovikovElement::monomial(c.recip(), -e.clone());
        if self.is_monomial() && self.cutoff.is_none() {
            return Ok(lead_inv);
        }
        let mut target = cutoff.clone();
        if let Some(own) = &self.cutoff {
            // known part of the inverse ends at own − 2e
            let limit = own - &e - &e;
            if limit < target {
                target = limit;
            }
        }
        // r = a / (c T^e) − 1, exponents > 0
        let r = self.mul(&lead_inv).without_cutoff().sub(&NovikovElement::one());
        // the series for (1+r)^{-1} is needed up to target + e
        let inner_cut = &target + &e;
        let mut sum = NovikovElement::one();
        if inner_cut.is_positive() {
            let neg_r = r.neg().with_cutoff(inner_cut.clone());
            let mut power = NovikovElement::one().with_cutoff(inner_cut.clone());
            loop {
                power = power.mul(&neg_r).with_cutoff(inner_cut.clone());
                if power.is_zero() {
                    break;
                }
                sum = sum.add(&power.clone().without_cutoff());
            }
        }
        Ok(sum.mul(&lead_inv).with_cutoff(target))
    }

    /// Exact quotient `self / other` when `other` divides `self` in
    /// `ℚ[T^{±1/D}]`; `None` otherwise. Both operands must be untruncated.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let (be, bc) = other.leading_term()?;
        if self.is_zero() {
            return Some(NovikovElement::zero());
        }
        let max_q = self.max_exponent()? - other.max_exponent()?;
        let mut rem = self.clone().without_cutoff();
        let mut quot = NovikovElement::zero();
        while let Some((re, rc)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = &re - be;
            if qe > max_q {
                return None;
            }
            let term = NovikovElement::monomial(&rc / bc, qe);
            rem = rem.sub(&term.mul(other));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Terms sharing the lowest exponent: `(exponent, coefficient)`.
    pub fn leading_coefficient(&self) -> Option<Q> {
        self.leading_term().map(|(_, c)| c.clone())
    }

    /// Coefficient of the term realising the valuation level `level`
    /// (exponent `-level`), zero if absent.
    pub fn coeff_at_level(&self, level: &Q) -> Q {
        self.coeff(&-level.clone())
    }
}

impl Add for &NovikovElement {
    type Output = NovikovElement;
    fn add(self, rhs: &NovikovElement) -> NovikovElement {
        NovikovElement::add(self, rhs)
    }
}

impl Sub for &NovikovElement {
    type Output = NovikovElement;
    fn sub(self, rhs: &NovikovElement) -> NovikovElement {
        NovikovElement::sub(self, rhs)
    }
}

impl Mul for &NovikovElement {
    type Output = NovikovElement;
    fn mul(self, rhs: &NovikovElement) -> NovikovElement {
        NovikovElement::mul(self, rhs)
    }
}

impl Neg for &NovikovElement {
    type Output = NovikovElement;
    fn neg(self) -> NovikovElement {
        NovikovElement::neg(self)
    }
}

impl From<Q> for NovikovElement {
    fn from(c: Q) -> Self {
        NovikovElement::constant(c)
    }
}

/// Canonical text form: `c*T^(e)` terms in ascending exponent order joined by
/// `" + "`, followed by `O(T^(c))` when truncated; `0` for the exact zero.
impl fmt::Display for NovikovElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{}*T^({})", fmt_q(c), fmt_q(e)))
            .collect();
        if let Some(c) = &self.cutoff {
            parts.push(format!("O(T^({}))", fmt_q(c)));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Accepts the canonical form and the usual shorthand: bare constants, `T`,
/// `T^e` without parentheses, omitted unit coefficients, `-` between terms
/// and terms in any order (repeated exponents are summed). A trailing
/// `O(T^(c))` sets the truncation order.
impl FromStr for NovikovElement {
    type Err = NovikovError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NovikovError::Parse(s.to_string());
        let terms = split_terms(s);
        if terms.is_empty() {
            return Err(bad());
        }
        let mut out = NovikovElement::zero();
        let mut cutoff = None;
        for term in terms {
            if cutoff.is_some() {
                return Err(bad());
            }
            let (neg, body) = strip_sign(&term);
            if let Some(rest) = body.strip_prefix("O(T^(") {
                let inner = rest.strip_suffix("))").ok_or_else(bad)?;
                if neg {
                    return Err(bad());
                }
                cutoff = Some(parse_q(inner).map_err(|_| bad())?);
                continue;
            }
            let (c, e) = parse_term(body).ok_or_else(bad)?;
            out.add_term(e, if neg { -c } else { c });
        }
        Ok(match cutoff {
            Some(c) => out.with_cutoff(c),
            None => out,
        })
    }
}

/// Splits at top-level `+`/`-`, keeping a `-` with the term it starts.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let after_operator = matches!(cur.chars().last(), Some('^' | '*' | '+' | '-')) || cur.is_empty();
        if depth == 0 && (ch == '+' || ch == '-') && !after_operator {
            out.push(std::mem::take(&mut cur));
        }
        if !(ch == '+' && cur.is_empty()) {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn strip_sign(term: &str) -> (bool, &str) {
    let mut neg = false;
    let mut rest = term;
    while let Some(c) = rest.chars().next().filter(|c| *c == '-' || *c == '+') {
        neg ^= c == '-';
        rest = &rest[1..];
    }
    (neg, rest)
}

/// `c`, `T`, `T^e`, `T^(e)`, `c*T…`; returns `(coefficient, exponent)`.
fn parse_term(body: &str) -> Option<(Q, Q)> {
    let (coef, power) = match body.find('T') {
        None => return Some((parse_q(body).ok()?, Q::zero())),
        Some(0) => (q(1), body),
        Some(i) => (parse_q(body[..i].strip_suffix('*')?).ok()?, &body[i..]),
    };
    let exp = match power.strip_prefix('T')? {
        "" => q(1),
        e => {
            let e = e.strip_prefix('^')?;
            let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
            parse_q(e).ok()?
        }
    };
    Some((coef, exp))
}

/// `1` if `x` is the unit `1·T^0` exactly.
pub fn is_one(x: &NovikovElement) -> bool {
    x.cutoff.is_none() && x.terms.len() == 1 && x.coeff(&q(0)).is_one()
}
