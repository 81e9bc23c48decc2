//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Exact rational used for masses, errors and deviations.
pub type Rational = Ratio<i128>;

pub fn to_f64(r: &Rational) -> f64 {
    // i128 -> f64 loses precision only beyond 2^53, well below any ratio we
    // report with meaning.
    *r.numer() as f64 / *r.denom() as f64
}

pub fn to_big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    // Scale both sides into f64 range before dividing.
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let shift_n = (num_bits - 60).max(0) as u64;
    let shift_d = (den_bits - 60).max(0) as u64;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

/// Natural log of a positive big rational, accurate to f64 precision.
pub fn big_ln(r: &BigRational) -> f64 {
    let num_bits = r.numer().bits() as i64;
    let den_bits = r.denom().bits() as i64;
    let shift_n = (num_bits - 60).max(0) as u64;
    let shift_d = (den_bits - 60).max(0) as u64;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n.ln() - d.ln() + (shift_n as f64 - shift_d as f64) * std::f64::consts::LN_2
}

/// Parse `p/q`, an integer, or a finite decimal such as `0.6` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p
            .trim()
            .parse()
            .or_else(|_| invalid(format!("bad numerator in `{s}`")))?;
        let q: i128 = q
            .trim()
            .parse()
            .or_else(|_| invalid(format!("bad denominator in `{s}`")))?;
        if q == 0 {
            return invalid(format!("zero denominator in `{s}`"));
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || frac_part.len() > 30
    {
        return invalid(format!("`{s}` is not a rational number"));
    }
    let digits = format!("{int_part}{frac_part}");
    let num: i128 = if digits.is_empty() {
        0
    } else {
        digits
            .parse()
            .or_else(|_| invalid(format!("`{s}` is out of range")))?
    };
    let den = 10i128.pow(frac_part.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// JSON rendition `{"num": .., "den": .., "float": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
    pub float: f64,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        Self {
            num: *r.numer(),
            den: *r.denom(),
            float: to_f64(r),
        }
    }
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        Self::from(&r)
    }
}

/// `#[serde(with = "crate::rational::json")]` for `Rational` fields.
pub mod json {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalJson::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let j = RationalJson::deserialize(d)?;
        if j.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::new(j.num, j.den))
    }
}

/// Same as [`json`] for `Option<Rational>`.
pub mod json_opt {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        r.as_ref().map(RationalJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let j = Option::<RationalJson>::deserialize(d)?;
        Ok(j.map(|j| Rational::new(j.num, j.den)))
    }
}

/// Same as [`json`] for maps of named rationals.
pub mod json_map {
    use super::*;
    use serde::ser::SerializeMap;
    use serde::{Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<String, Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &RationalJson::from(v))?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<String, Rational>, D::Error> {
        let m = BTreeMap::<String, RationalJson>::deserialize(d)?;
        Ok(m.into_iter()
            .map(|(k, j)| (k, Rational::new(j.num, j.den)))
            .collect())
    }
}
