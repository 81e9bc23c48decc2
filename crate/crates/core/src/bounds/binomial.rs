//! Binomial tails.
//!
//! The float engine anchors at the threshold's log-pmf, evaluated with the
//! saddle-point form (Stirling remainders plus the deviance `bd0`), and sums
//! the pmf recurrence outward relative to that anchor. Whichever tail lies on
//! the far side of the mode is summed directly; the other is its complement.
//! The exact engine sums integer terms `C(n,j) a^j b^(n-j)` over `den^n`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSide {
    /// `Pr(Z <= threshold)`.
    Lower,
    /// `Pr(Z >= threshold)`.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomQuery {
    pub n: u64,
    #[serde(with = "crate::rational::json")]
    pub p: Rational,
    pub threshold: u64,
}

impl BinomQuery {
    pub fn new(n: u64, p: Rational, threshold: u64) -> Result<Self> {
        if p < Rational::from_integer(0) || p > Rational::from_integer(1) {
            return invalid(format!("success probability {p} outside [0, 1]"));
        }
        if threshold > n {
            return invalid(format!("threshold {threshold} exceeds n = {n}"));
        }
        Ok(Self { n, p, threshold })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailValue {
    pub value: f64,
    pub ln_value: f64,
}

impl TailValue {
    fn from_ln(ln_value: f64) -> Self {
        Self {
            value: ln_value.exp(),
            ln_value,
        }
    }

    fn certain() -> Self {
        Self {
            value: 1.0,
            ln_value: 0.0,
        }
    }

    fn impossible() -> Self {
        Self {
            value: 0.0,
            ln_value: f64::NEG_INFINITY,
        }
    }
}

/// `ln(n!) - ln(sqrt(2 pi n) (n/e)^n)`.
fn stirlerr(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n <= 15.0 {
        let mut fact = 1.0f64;
        let mut i = 2.0;
        while i <= n {
            fact *= i;
            i += 1.0;
        }
        return fact.ln() - (n + 0.5) * n.ln() + n - 0.5 * (2.0 * PI).ln();
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x / m) + m - x`, stable when `x` is close to `m`.
fn bd0(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let s1 = s + ej / (2.0 * j + 1.0);
            if s1 == s {
                return s1;
            }
            s = s1;
            j += 1.0;
        }
    }
    x * (x / m).ln() + m - x
}

struct Coin {
    n: f64,
    p: f64,
    q: f64,
}

impl Coin {
    fn new(n: u64, p: &Rational) -> Self {
        let q = Rational::from_integer(1) - p;
        Self {
            n: n as f64,
            p: to_f64(p),
            q: to_f64(&q),
        }
    }

    fn ln_pmf(&self, x: f64) -> f64 {
        let (n, p, q) = (self.n, self.p, self.q);
        if x == 0.0 {
            return n * (-p).ln_1p();
        }
        if x == n {
            return n * p.ln();
        }
        stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(x, n * p) - bd0(n - x, n * q)
            + 0.5 * (n / (2.0 * PI * x * (n - x))).ln()
    }

    /// `ln sum_{j <= t} pmf(j) / pmf(t)`.
    fn ln_sum_down(&self, t: f64) -> f64 {
        let ratio = self.q / self.p;
        let (mut r, mut s, mut j) = (1.0f64, 1.0f64, t);
        while j > 0.0 {
            r *= j / (self.n - j + 1.0) * ratio;
            s += r;
            if r < s * 1e-17 {
                break;
            }
            j -= 1.0;
        }
        s.ln()
    }

    /// `ln sum_{j >= t} pmf(j) / pmf(t)`.
    fn ln_sum_up(&self, t: f64) -> f64 {
        let ratio = self.p / self.q;
        let (mut r, mut s, mut j) = (1.0f64, 1.0f64, t);
        while j < self.n {
            r *= (self.n - j) / (j + 1.0) * ratio;
            s += r;
            if r < s * 1e-17 {
                break;
            }
            j += 1.0;
        }
        s.ln()
    }

    fn mode(&self) -> f64 {
        ((self.n + 1.0) * self.p).floor()
    }

    fn ln_lower(&self, t: u64) -> f64 {
        let tf = t as f64;
        if tf <= self.mode() {
            self.ln_pmf(tf) + self.ln_sum_down(tf)
        } else {
            let up = (self.ln_pmf(tf + 1.0) + self.ln_sum_up(tf + 1.0)).exp();
            (-up).ln_1p()
        }
    }

    fn ln_upper(&self, t: u64) -> f64 {
        let tf = t as f64;
        if tf >= self.mode() {
            self.ln_pmf(tf) + self.ln_sum_up(tf)
        } else {
            let low = (self.ln_pmf(tf - 1.0) + self.ln_sum_down(tf - 1.0)).exp();
            (-low).ln_1p()
        }
    }
}

/// `Pr(Z <= t)` or `Pr(Z >= t)` for `Z ~ Bin(n, p)`.
pub fn binom_tail(q: &BinomQuery, side: TailSide) -> TailValue {
    let (n, t) = (q.n, q.threshold);
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    match side {
        TailSide::Lower => {
            if t >= n || q.p == zero {
                TailValue::certain()
            } else if q.p == one {
                TailValue::impossible()
            } else {
                TailValue::from_ln(Coin::new(n, &q.p).ln_lower(t))
            }
        }
        TailSide::Upper => {
            if t == 0 || q.p == one {
                TailValue::certain()
            } else if q.p == zero || t > n {
                TailValue::impossible()
            } else {
                TailValue::from_ln(Coin::new(n, &q.p).ln_upper(t))
            }
        }
    }
}

/// `Pr(Z <= t)` as a float.
pub fn binom_cdf(n: u64, p: Rational, t: u64) -> f64 {
    binom_tail(
        &BinomQuery {
            n,
            p,
            threshold: t.min(n),
        },
        TailSide::Lower,
    )
    .value
}

/// Exact `Pr(Z <= t)`.
pub fn binom_lower_exact(n: u64, p: &Rational, t: u64) -> BigRational {
    exact_sum(n, p, 0, t.min(n))
}

/// Exact `Pr(Z >= t)`.
pub fn binom_upper_exact(n: u64, p: &Rational, t: u64) -> BigRational {
    if t > n {
        return BigRational::zero();
    }
    exact_sum(n, p, t, n)
}

/// Smallest `j` with exact `Pr(Z <= j) >= target`, scanning the lower tail
/// upward one exact term at a time. `None` when `target > 1`.
pub fn binom_lower_quantile_exact(n: u64, p: &Rational, target: &BigRational) -> Option<u64> {
    if target > &BigRational::one() {
        return None;
    }
    if !target.is_positive() {
        return Some(0);
    }
    let den = BigInt::from(*p.denom());
    let a = BigInt::from(*p.numer());
    let b = &den - &a;
    if b.is_zero() {
        return Some(n);
    }
    let total = num_traits::pow(den, n as usize);
    // sum / total >= tn / td  <=>  sum * td >= tn * total
    let need = target.numer() * &total;
    let td = target.denom();
    let mut term = num_traits::pow(b.clone(), n as usize);
    let mut sum = BigInt::zero();
    for j in 0..=n {
        sum += &term;
        if &sum * td >= need {
            return Some(j);
        }
        if j < n {
            term = (&term * BigInt::from(n - j) * &a) / (BigInt::from(j + 1) * &b);
        }
    }
    Some(n)
}

/// `sum_{j=lo..=hi} C(n,j) p^j (1-p)^(n-j)` in exact arithmetic.
fn exact_sum(n: u64, p: &Rational, lo: u64, hi: u64) -> BigRational {
    let den = BigInt::from(*p.denom());
    let a = BigInt::from(*p.numer());
    let b = &den - &a;
    let total = num_traits::pow(den, n as usize);
    if lo > hi {
        return BigRational::zero();
    }
    if b.is_zero() {
        // p = 1: all mass at n.
        return if hi == n {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    let mut term = num_traits::pow(b.clone(), n as usize);
    let mut sum = BigInt::zero();
    for j in 0..=hi {
        if j >= lo {
            sum += &term;
        }
        if j == n {
            break;
        }
        // term_{j+1} = term_j (n-j) a / ((j+1) b)
        let (quot, rem) = (&term * BigInt::from(n - j) * &a).div_rem(&(BigInt::from(j + 1) * &b));
        debug_assert!(rem.is_zero());
        term = quot;
    }
    BigRational::new(sum, total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::big_to_f64;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn lower(n: u64, p: Rational, t: u64) -> f64 {
        binom_tail(&BinomQuery::new(n, p, t).unwrap(), TailSide::Lower).value
    }

    fn upper(n: u64, p: Rational, t: u64) -> f64 {
        binom_tail(&BinomQuery::new(n, p, t).unwrap(), TailSide::Upper).value
    }

    #[test]
    fn examples() {
        assert!((lower(1, q(1, 2), 0) - 0.5).abs() < 1e-15);
        assert!((lower(10, q(1, 2), 2) - 0.0546875).abs() < 1e-15);
        assert_eq!(lower(10, q(0, 1), 0), 1.0);
        assert_eq!(
            binom_lower_exact(10, &q(1, 2), 2),
            BigRational::new(BigInt::from(56), BigInt::from(1024))
        );
    }

    #[test]
    fn reference_value() {
        let v = lower(1000, q(1, 10), 70);
        assert!((v / 0.000_574_495_84 - 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn matches_exact_engine() {
        for &(n, p) in &[
            (50u64, q(1, 3)),
            (400, q(1, 64)),
            (1000, q(1, 2)),
            (3000, q(7, 10)),
        ] {
            for t in (0..=n).step_by((n as usize / 37).max(1)) {
                let exact = big_to_f64(&binom_lower_exact(n, &p, t));
                let fast = lower(n, p, t);
                if exact > 1e-300 {
                    assert!(
                        (fast / exact - 1.0).abs() < 1e-12,
                        "n={n} p={p} t={t}: {fast} vs {exact}"
                    );
                }
                let exact_up = big_to_f64(&binom_upper_exact(n, &p, t));
                let fast_up = upper(n, p, t);
                if exact_up > 1e-300 {
                    assert!(
                        (fast_up / exact_up - 1.0).abs() < 1e-12,
                        "upper n={n} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn quantile_scan() {
        let p = q(1, 64);
        let target = BigRational::new(BigInt::from(1), BigInt::from(512));
        let j = binom_lower_quantile_exact(4096, &p, &target).unwrap();
        assert!(binom_lower_exact(4096, &p, j) >= target);
        assert!(binom_lower_exact(4096, &p, j - 1) < target);
        assert_eq!(
            binom_lower_quantile_exact(10, &q(1, 2), &BigRational::one()),
            Some(10)
        );
        assert_eq!(
            binom_lower_quantile_exact(10, &q(1, 2), &BigRational::zero()),
            Some(0)
        );
    }

    #[test]
    fn complement_and_monotone() {
        let (n, p) = (777u64, q(3, 11));
        let mut prev = 0.0;
        for t in 0..n {
            let lo = lower(n, p, t);
            assert!(lo >= prev);
            prev = lo;
            let up = upper(n, p, t + 1);
            assert!((lo + up - 1.0).abs() < 1e-12);
        }
        assert_eq!(lower(n, p, n), 1.0);
    }

    #[test]
    fn large_n_far_tail() {
        // Deep tail stays finite in log space.
        let v = binom_tail(
            &BinomQuery::new(1_000_000, q(1, 2), 400_000).unwrap(),
            TailSide::Lower,
        );
        assert!(v.value == 0.0 && v.ln_value.is_finite() && v.ln_value < -20_000.0);
    }
}
