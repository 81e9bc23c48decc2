//! Fixed-point natural logarithms of big rationals, used to confirm float
//! roundings where a decision hinges on a logarithm.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const GUARD: u32 = 64;

/// `2 * atanh(z)` for fixed-point `z = zf / 2^w`, `|z| <= 1/3`, at scale `2^w`.
fn two_atanh(zf: &BigInt, w: u32) -> BigInt {
    if zf.is_negative() {
        // Odd function; shifting a negative value floors toward -1 forever.
        return -two_atanh(&-zf, w);
    }
    let z2 = (zf * zf) >> w;
    let mut power = zf.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power = (&power * &z2) >> w;
        k += 1;
    }
    sum << 1
}

fn ln2_fixed(w: u32) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let third = (BigInt::one() << w) / BigInt::from(3);
    two_atanh(&third, w)
}

/// `ln(x) * 2^bits`, rounded toward negative infinity up to an error of a
/// few units in the last place. Panics unless `x > 0`.
pub fn ln_fixed(x: &BigRational, bits: u32) -> BigInt {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    let w = bits + GUARD;
    let e = x.numer().bits() as i64 - x.denom().bits() as i64;
    // y = x / 2^e in [1/2, 2)
    let (num, den) = if e >= 0 {
        (x.numer().clone(), x.denom() << (e as u64))
    } else {
        (x.numer() << ((-e) as u64), x.denom().clone())
    };
    let one = BigInt::one() << w;
    let yf = (num << w) / den;
    let zf = ((&yf - &one) << w) / (&yf + &one);
    let total = two_atanh(&zf, w) + ln2_fixed(w) * BigInt::from(e);
    total >> GUARD
}

/// Fixed-point value `v / 2^bits` as a big rational.
pub fn fixed_to_rational(v: &BigInt, bits: u32) -> BigRational {
    BigRational::new(v.clone(), BigInt::one() << bits)
}

/// Sign of `a - b` for fixed-point numbers carrying an absolute error of at
/// most `slack` units each; `None` when they are too close to call.
pub fn compare_with_slack(a: &BigInt, b: &BigInt, slack: u64) -> Option<std::cmp::Ordering> {
    let diff = a - b;
    if diff.magnitude() <= &num_bigint::BigUint::from(2 * slack) {
        None
    } else if diff.sign() == Sign::Minus {
        Some(std::cmp::Ordering::Less)
    } else {
        Some(std::cmp::Ordering::Greater)
    }
}

/// Decide `ln(x) >= y` for exact `x > 0` and rational `y`.
pub fn ln_at_least(x: &BigRational, y: &BigRational) -> bool {
    let mut bits = 128;
    loop {
        let lx = ln_fixed(x, bits);
        let scaled = y * BigRational::from_integer(BigInt::one() << bits);
        let ly = scaled.floor().to_integer();
        match compare_with_slack(&lx, &ly, 4) {
            Some(ord) => return ord.is_ge(),
            None if bits >= 4096 => {
                // Equal to within 2^-4096: only possible when ln(x) = y
                // exactly, which for rational y happens only at x = 1, y = 0.
                return true;
            }
            None => bits *= 2,
        }
    }
}

/// Decide `ln(ln(x)) >= y` for exact `x > 1`.
pub fn ln_ln_at_least(x: &BigRational, y: &BigRational) -> bool {
    assert!(x > &BigRational::one(), "ln ln needs x > 1");
    let mut bits = 128;
    loop {
        // ln(x) lies within a few units of `inner / 2^bits`.
        let inner = ln_fixed(x, bits);
        let slack = BigInt::from(4);
        let lo = fixed_to_rational(&(&inner - &slack), bits);
        let hi = fixed_to_rational(&(&inner + &slack), bits);
        if lo.is_positive() {
            let lo_ok = ln_at_least(&lo, y);
            let hi_ok = ln_at_least(&hi, y);
            if lo_ok == hi_ok {
                return lo_ok;
            }
        }
        assert!(bits < 8192, "ln ln comparison did not resolve");
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(v: &BigInt, bits: u32) -> f64 {
        crate::rational::big_to_f64(&fixed_to_rational(v, bits))
    }

    #[test]
    fn known_logs() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert!((approx(&ln_fixed(&r(512, 1), 200), 200) - 512f64.ln()).abs() < 1e-15);
        assert!((approx(&ln_fixed(&r(3, 2), 200), 200) - 1.5f64.ln()).abs() < 1e-15);
        assert!((approx(&ln_fixed(&r(1, 7), 200), 200) + 7f64.ln()).abs() < 1e-15);
        assert!(ln_fixed(&r(1, 1), 100).is_zero());
    }

    #[test]
    fn threshold_decisions() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // ln 2 = 0.693147...
        assert!(ln_at_least(&r(2, 1), &r(693147, 1000000)));
        assert!(!ln_at_least(&r(2, 1), &r(693148, 1000000)));
        assert!(ln_at_least(&r(1, 1), &r(0, 1)));
        // ln ln 65536 = 2.40605...
        assert!(ln_ln_at_least(&r(65536, 1), &r(2406, 1000)));
        assert!(!ln_ln_at_least(&r(65536, 1), &r(2407, 1000)));
    }

    #[test]
    fn many_digits() {
        // ln 2 to 40 digits: 0.6931471805599453094172321214581765680755
        let v = ln_fixed(&BigRational::from_integer(BigInt::from(2)), 200);
        let scaled: BigInt = (v * num_traits::pow(BigInt::from(10), 40)) >> 200;
        assert_eq!(
            scaled.to_string(),
            "6931471805599453094172321214581765680755"
        );
    }
}
