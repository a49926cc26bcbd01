//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse { pos: 0, msg: format!("bad rational {t:?}") };
    if let Some((w, f)) = t.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = w.starts_with('-');
        let w = w.trim_start_matches(['-', '+']);
        if !w.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{w}{f}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), f.len());
        let r = Rational::new(digits, scale);
        return Ok(if neg { -r } else { r });
    }
    let r: Rational = t.parse().map_err(|_| bad())?;
    Ok(r)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| if r.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY })
}

/// `base^n`.
pub fn pow(base: &Rational, n: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..n {
        r *= base;
    }
    r
}

pub fn in_open_unit(r: &Rational) -> bool {
    r.is_positive() && *r < Rational::one()
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
