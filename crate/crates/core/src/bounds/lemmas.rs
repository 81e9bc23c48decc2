//! Exact verifiers for the reverse-Chernoff and anti-concentration lemmas and
//! the confidence schedule of the dyadic union bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::binomial::{binom_lower_exact, binom_upper_exact};
use super::hp::ln_at_least;
use crate::error::{invalid, Result};
use crate::rational::{big_ln, big_to_f64, to_big, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReverseChernoff {
    pub n: u64,
    #[serde(with = "crate::rational::json")]
    pub p: Rational,
    pub delta: f64,
    /// `floor((1 - delta) n p)`.
    pub threshold: u64,
    pub lhs: f64,
    pub ln_lhs: f64,
    pub rhs: f64,
    pub ln_rhs: f64,
    /// Whether `sqrt(3/(np)) < delta < 1/2`.
    pub valid: bool,
    pub holds: bool,
}

/// Compare `Pr(Z <= (1-delta) n p)` against `exp(-9 n p delta^2)` exactly.
///
/// `delta` is taken as the exact binary value of the float. The comparison
/// is made between `ln(lhs)` in fixed point and the exact exponent,
/// escalating precision if the two are within rounding distance.
pub fn reverse_chernoff_check(n: u64, p: Rational, delta: f64) -> Result<ReverseChernoff> {
    if p < Rational::from_integer(0) || p > Rational::new(1, 2) {
        return invalid(format!("p = {p} outside [0, 1/2]"));
    }
    let Some(d) = BigRational::from_float(delta) else {
        return invalid(format!("delta = {delta} is not finite"));
    };
    let np = BigRational::from_integer(BigInt::from(n)) * to_big(&p);
    let threshold_q = (BigRational::one() - &d) * &np;
    let threshold = if threshold_q.is_negative() {
        None
    } else {
        Some(
            threshold_q
                .floor()
                .to_integer()
                .to_u64()
                .expect("threshold fits")
                .min(n),
        )
    };
    let exponent = BigRational::from_integer(BigInt::from(9)) * &np * &d * &d;
    let lhs = match threshold {
        Some(t) => binom_lower_exact(n, &p, t),
        None => BigRational::zero(),
    };
    let valid = {
        let lo = (&d * &d) * &np > BigRational::from_integer(BigInt::from(3));
        lo && d > BigRational::zero() && d < BigRational::new(BigInt::one(), BigInt::from(2))
    };
    let holds = if lhs.is_zero() {
        false
    } else {
        ln_at_least(&lhs, &(-exponent.clone()))
    };
    let ln_rhs = -big_to_f64(&exponent);
    Ok(ReverseChernoff {
        n,
        p,
        delta,
        threshold: threshold.unwrap_or(0),
        lhs: big_to_f64(&lhs),
        ln_lhs: if lhs.is_zero() {
            f64::NEG_INFINITY
        } else {
            big_ln(&lhs)
        },
        rhs: ln_rhs.exp(),
        ln_rhs,
        valid,
        holds,
    })
}

/// The eight `delta` values strictly inside `(sqrt(3/(np)), 1/2)`, evenly
/// spaced at `lo + (hi - lo) j / 9` for `j = 1..=8`. Empty when `np <= 12`.
pub fn reverse_chernoff_grid(n: u64, p: &Rational) -> Vec<f64> {
    let np = n as f64 * to_f64(p);
    if np <= 12.0 {
        return Vec::new();
    }
    let lo = (3.0 / np).sqrt();
    let hi = 0.5;
    (1..=8).map(|j| lo + (hi - lo) * j as f64 / 9.0).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaleyZygmund {
    pub n: u64,
    #[serde(with = "crate::rational::json")]
    pub p: Rational,
    /// Smallest integer at least `np/2`.
    pub threshold: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Exact check of `Pr(Y >= np/2) >= min(1, np)/8` for `Y ~ Bin(n, p)`.
pub fn paley_zygmund_check(n: u64, p: Rational) -> Result<PaleyZygmund> {
    if p < Rational::from_integer(0) || p > Rational::from_integer(1) {
        return invalid(format!("p = {p} outside [0, 1]"));
    }
    let np = BigRational::from_integer(BigInt::from(n)) * to_big(&p);
    let half = &np / BigRational::from_integer(BigInt::from(2));
    let threshold = half.ceil().to_integer().to_u64().expect("threshold fits");
    let lhs = binom_upper_exact(n, &p, threshold);
    let one = BigRational::one();
    let rhs = if np < one { np } else { one } / BigRational::from_integer(BigInt::from(8));
    Ok(PaleyZygmund {
        n,
        p,
        threshold,
        lhs: big_to_f64(&lhs),
        rhs: big_to_f64(&rhs),
        holds: lhs >= rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaSchedule {
    /// `delta_i = delta / (i (i + 1))` for `i = 1..=m`.
    #[serde(with = "rational_vec")]
    pub deltas: Vec<Rational>,
    /// `delta / (m + 1)`.
    #[serde(with = "crate::rational::json")]
    pub delta0: Rational,
}

impl DeltaSchedule {
    pub fn total(&self) -> Rational {
        self.deltas.iter().fold(self.delta0, |acc, d| acc + d)
    }
}

mod rational_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::Rational;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "crate::rational::json")] Rational);

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|r| Wrap(*r)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<Wrap>::deserialize(d)?
            .into_iter()
            .map(|w| w.0)
            .collect())
    }
}

pub fn delta_schedule(m: u32, delta: Rational) -> Result<DeltaSchedule> {
    if m == 0 {
        return invalid("the schedule needs m >= 1");
    }
    if delta <= Rational::from_integer(0) || delta >= Rational::from_integer(1) {
        return invalid(format!("delta = {delta} outside (0, 1)"));
    }
    let deltas = (1..=m as i128)
        .map(|i| delta / Rational::from_integer(i * (i + 1)))
        .collect();
    Ok(DeltaSchedule {
        deltas,
        delta0: delta / Rational::from_integer(m as i128 + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reverse_chernoff_examples() {
        let r = reverse_chernoff_check(1000, q(1, 10), 0.3).unwrap();
        assert!(r.valid && r.holds);
        assert_eq!(r.threshold, 70);
        assert!(r.lhs > 4e-4 && r.lhs < 1e-3, "{}", r.lhs);
        assert!((r.ln_rhs + 81.0).abs() < 1e-9);

        let r = reverse_chernoff_check(1000, q(1, 10), 0.6).unwrap();
        assert!(!r.valid);

        let r = reverse_chernoff_check(48, q(1, 2), 0.45).unwrap();
        assert!(r.valid);
        assert_eq!(r.threshold, 13);
        let exact = big_to_f64(&binom_lower_exact(48, &q(1, 2), 13));
        assert_eq!(r.holds, exact >= (-9.0 * 24.0 * 0.45f64 * 0.45).exp());
    }

    #[test]
    fn grid_is_strictly_inside() {
        let g = reverse_chernoff_grid(4096, &q(1, 64));
        assert_eq!(g.len(), 8);
        let lo = (3.0f64 / 64.0).sqrt();
        assert!(g.iter().all(|&d| d > lo && d < 0.5));
        assert!(reverse_chernoff_grid(16, &q(1, 2)).is_empty());
    }

    #[test]
    fn paley_zygmund_examples() {
        let r = paley_zygmund_check(10, q(1, 10)).unwrap();
        assert_eq!(r.threshold, 1);
        assert!((r.lhs - (1.0 - 0.9f64.powi(10))).abs() < 1e-15);
        assert_eq!(r.rhs, 0.125);
        assert!(r.holds);
        assert!(paley_zygmund_check(1, q(1, 1)).unwrap().holds);
        let z = paley_zygmund_check(5, q(0, 1)).unwrap();
        assert_eq!((z.lhs, z.rhs, z.holds), (1.0, 0.0, true));
    }

    #[test]
    fn schedule_examples() {
        let s = delta_schedule(1, q(1, 2)).unwrap();
        assert_eq!(s.deltas, vec![q(1, 4)]);
        assert_eq!(s.delta0, q(1, 4));
        let s = delta_schedule(2, q(3, 5)).unwrap();
        assert_eq!(s.deltas, vec![q(3, 10), q(1, 10)]);
        assert_eq!(s.delta0, q(1, 5));
        assert_eq!(s.total(), q(3, 5));
        assert!(delta_schedule(0, q(1, 2)).is_err());
        assert!(delta_schedule(3, q(1, 1)).is_err());
    }
}
