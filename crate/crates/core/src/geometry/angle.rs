use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Largest denominator an [`Angle`] may carry. Keeps every cross product
/// used by exact comparisons inside `u128`.
pub const MAX_DEN: u64 = 1 << 62;

/// An exact direction, stored as a reduced fraction `num/den` of a full turn
/// with `0 <= num/den < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAngle", into = "RawAngle")]
pub struct Angle {
    num: u64,
    den: u64,
}

#[derive(Serialize, Deserialize)]
struct RawAngle {
    num: i128,
    den: i128,
}

impl TryFrom<RawAngle> for Angle {
    type Error = crate::Error;
    fn try_from(raw: RawAngle) -> Result<Self> {
        Angle::from_turns(raw.num, raw.den)
    }
}

impl From<Angle> for RawAngle {
    fn from(a: Angle) -> Self {
        RawAngle {
            num: a.num as i128,
            den: a.den as i128,
        }
    }
}

/// Build an angle from a (possibly unreduced, possibly out of range) fraction
/// of a turn.
pub fn angle_from_turns(num: i128, den: i128) -> Result<Angle> {
    Angle::from_turns(num, den)
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };
    pub const HALF_TURN: Angle = Angle { num: 1, den: 2 };

    pub fn from_turns(num: i128, den: i128) -> Result<Angle> {
        if den == 0 {
            return invalid("angle denominator must be positive");
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        if den as u128 > MAX_DEN as u128 {
            return invalid(format!("angle denominator {den} exceeds 2^62"));
        }
        Ok(Angle {
            num: num as u64,
            den: den as u64,
        })
    }

    pub(crate) fn from_reduced_u128(num: u128, den: u128) -> Result<Angle> {
        let num = num % den;
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        if den > MAX_DEN as u128 {
            return invalid(format!("angle denominator {den} exceeds 2^62"));
        }
        Ok(Angle {
            num: num as u64,
            den: den as u64,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// Float rendition in radians; never used for decisions.
    pub fn radians(&self) -> f64 {
        std::f64::consts::TAU * self.num as f64 / self.den as f64
    }

    pub fn turns_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add_half_turn(&self) -> Angle {
        self.checked_add(&Angle::HALF_TURN)
            .expect("half-turn sum stays within 2^63")
    }

    pub fn checked_add(&self, other: &Angle) -> Option<Angle> {
        let (a, b) = (self.den as u128, other.den as u128);
        let l = a.lcm(&b);
        let num = self.num as u128 * (l / a) + other.num as u128 * (l / b);
        Angle::from_reduced_u128(num, l).ok()
    }

    pub fn checked_sub(&self, other: &Angle) -> Option<Angle> {
        let (a, b) = (self.den as u128, other.den as u128);
        let l = a.lcm(&b);
        let num = self.num as u128 * (l / a) + l - other.num as u128 * (l / b);
        Angle::from_reduced_u128(num, l).ok()
    }

    /// Rotate by `by`, erroring if the result's denominator would exceed [`MAX_DEN`].
    pub fn rotated_by(&self, by: &Angle) -> Result<Angle> {
        match self.checked_add(by) {
            Some(a) => Ok(a),
            None => invalid("rotation overflows the angle denominator bound"),
        }
    }

    /// Counter-clockwise offset `(self - origin) mod 1` as an unreduced
    /// fraction `(x, d)` with `0 <= x < d`.
    #[inline]
    pub(crate) fn offset_from(&self, origin: &Angle) -> (u128, u128) {
        let d = self.den as u128 * origin.den as u128;
        let a = self.num as u128 * origin.den as u128;
        let b = origin.num as u128 * self.den as u128;
        let x = if a >= b { a - b } else { a + d - b };
        (x, d)
    }

    /// Exact midpoint of the counter-clockwise arc from `self` to `to`
    /// (the full turn when the endpoints coincide).
    pub fn arc_midpoint(&self, to: &Angle) -> Angle {
        let (x, d) = to.offset_from(self);
        let (x, d) = if x == 0 { (d, d) } else { (x, d) };
        // self + x / (2d)
        let two_d = 2 * d;
        let num = self.num as u128 * (two_d / self.den as u128) + x;
        Angle::from_reduced_u128(num, two_d)
            .or_else(|_| approx_midpoint(self, x, d))
            .expect("midpoint representable")
    }
}

fn approx_midpoint(start: &Angle, x: u128, d: u128) -> Result<Angle> {
    // Fallback for huge denominators: any point strictly inside the arc works
    // as a representative. Bisect on a dyadic grid until one lands inside.
    let span = x as f64 / d as f64;
    let mut bits = 20u32;
    loop {
        let den = 1u128 << bits;
        let guess = ((start.turns_f64() + span / 2.0) * den as f64).floor() as u128;
        let cand = Angle::from_reduced_u128(guess % den, den)?;
        let (cx, cd) = cand.offset_from(start);
        if cx > 0 && cx * d < x * cd {
            return Ok(cand);
        }
        bits += 4;
        if bits > 60 {
            return invalid("arc too narrow for a representable interior point");
        }
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} turn", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_examples() {
        assert_eq!(angle_from_turns(0, 1).unwrap(), Angle::ZERO);
        let a = angle_from_turns(5, 4).unwrap();
        assert_eq!((a.num(), a.den()), (1, 4));
        let a = angle_from_turns(6, 8).unwrap();
        assert_eq!((a.num(), a.den()), (3, 4));
        let a = angle_from_turns(-1, 4).unwrap();
        assert_eq!((a.num(), a.den()), (3, 4));
        assert!(angle_from_turns(1, 0).is_err());
    }

    #[test]
    fn ordering_is_exact() {
        let a = angle_from_turns(1, 3).unwrap();
        let b = angle_from_turns(333_333_333_333, 1_000_000_000_000).unwrap();
        assert!(b < a);
        assert_eq!(angle_from_turns(2, 6).unwrap().cmp(&a), Ordering::Equal);
    }

    #[test]
    fn half_turn_involution_and_denominator() {
        for (n, d) in [(0, 1), (1, 2), (1, 6), (1, 4), (2, 3), (5, 12), (7, 8)] {
            let a = angle_from_turns(n, d).unwrap();
            let b = a.add_half_turn();
            assert_eq!(b.add_half_turn(), a);
            assert!(
                [a.den() / 2, a.den(), 2 * a.den()].contains(&b.den()),
                "{a} -> {b}"
            );
        }
    }

    #[test]
    fn midpoint_lies_inside_arc() {
        let a = angle_from_turns(7, 8).unwrap();
        let b = angle_from_turns(1, 8).unwrap();
        assert_eq!(a.arc_midpoint(&b), Angle::ZERO);
        assert_eq!(b.arc_midpoint(&b), angle_from_turns(5, 8).unwrap());
    }

    #[test]
    fn json_shape() {
        let a = angle_from_turns(3, 4).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"num":3,"den":4}"#);
        let back: Angle = serde_json::from_str(r#"{"num":6,"den":8}"#).unwrap();
        assert_eq!(back, a);
    }
}
