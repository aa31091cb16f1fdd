//! Exact rational helpers shared by every module.
//!
//! All arithmetic in the crate is done over [`Q`] (arbitrary-precision
//! rationals). Rationals are rendered as `"num"` or `"num/den"` with the sign
//! on the numerator; that rendering is the one used by every text and JSON
//! format in the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| err())?;
            Ok(Q::from_integer(n))
        }
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Smallest integer `>= x`.
pub fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

/// `ceil_q` narrowed to `i64`; the bounds in this crate are small.
pub fn ceil_i64(x: &Q) -> i64 {
    ceil_q(x).to_i64().expect("ceiling does not fit in i64")
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor does not fit in i64")
}

/// Positive generator of the additive group spanned by `xs` (zeros ignored).
/// Returns `None` when every entry is zero.
pub fn gcd_q<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
    let mut acc: Option<Q> = None;
    for x in xs {
        if x.is_zero() {
            continue;
        }
        let x = x.abs();
        acc = Some(match acc {
            None => x,
            Some(g) => {
                // gcd(a/b, c/d) = gcd(ad, cb) / bd
                let num = (g.numer() * x.denom()).gcd(&(x.numer() * g.denom()));
                let den = g.denom() * x.denom();
                Q::new(num, den)
            }
        });
    }
    acc
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

/// Serde adapter storing a rational as its `num/den` string.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_value(&v).map_err(serde::de::Error::custom)
    }

    /// Rationals are accepted either as strings (`"3/2"`) or as JSON integers.
    pub fn from_value(v: &serde_json::Value) -> Result<Q, String> {
        match v {
            serde_json::Value::String(s) => parse_q(s).map_err(|e| e.to_string()),
            serde_json::Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(super::q(i)),
                None => Err(format!("expected an integer or a rational string, got {n}")),
            },
            other => Err(format!("expected a rational, got {other}")),
        }
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::{fmt_q, Q};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let vs = Vec::<serde_json::Value>::deserialize(d)?;
        vs.iter()
            .map(|v| super::serde_q::from_value(v).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        assert_eq!(fmt_q(&qf(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert_eq!(parse_q("-3/2").unwrap(), qf(-3, 2));
        assert_eq!(parse_q(" 4 ").unwrap(), q(4));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn rational_gcd() {
        assert_eq!(gcd_q(&[q(4), q(6)]), Some(q(2)));
        assert_eq!(gcd_q(&[qf(1, 2), qf(1, 3)]), Some(qf(1, 6)));
        assert_eq!(gcd_q(&[q(0), q(-4)]), Some(q(4)));
        assert_eq!(gcd_q(&[q(0)]), None);
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil_i64(&qf(20, 8)), 3);
        assert_eq!(ceil_i64(&qf(-1, 2)), 0);
        assert_eq!(ceil_i64(&q(5)), 5);
    }
}
