//! Dyadic lower bound on the uniform `k`-point circle with target `[0, pi)`.
//!
//! The shift `h_i = [B^i/k, B^i/k + 1/2)` (turns) disagrees with the target
//! exactly on `C_i`: the first `B^i` atoms after `0` and after the half turn.
//! A band whose ring `D_i = C_i \ C_{i-1}` is undersampled makes `h_i` look
//! better in-sample than it is.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{draw, TrialOutcome, Witness};
use crate::bounds::hp::ln_ln_at_least;
use crate::bounds::{bound_value, BoundKind, BoundParams};
use crate::constants::Constants;
use crate::distributions::{empirical_error, true_error, LabeledDist, Sample};
use crate::error::{invalid, Result};
use crate::geometry::{angle_from_turns, Angle, Semicircle};
use crate::rational::{to_f64, Rational};

pub const TAG: &str = "dyadic-lb";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DyadicConstruction {
    pub n: u64,
    pub k: u64,
    pub base: u64,
    /// Number of bands `m = log_B(k/2)`.
    pub bands: u32,
    /// `|C_i|` for `i = 1..=m` (index 0 is band 1).
    pub c_sizes: Vec<u64>,
    pub d_sizes: Vec<u64>,
    #[serde(with = "rational_vec")]
    pub mu: Vec<Rational>,
    pub hypotheses: Vec<Semicircle>,
    pub target: Semicircle,
    #[serde(skip)]
    atom_band: Vec<u8>,
    #[serde(skip)]
    dist: Option<LabeledDist>,
}

mod rational_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::{Rational, RationalJson};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(RationalJson::from)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<RationalJson>::deserialize(d)?
            .into_iter()
            .map(|j| Rational::new(j.num, j.den))
            .collect())
    }
}

fn big(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn thm7_construct(n: u64, base: u64, c2: Rational) -> Result<DyadicConstruction> {
    if n < 16 {
        return invalid(format!("need n >= 16 so that ln ln n > 1, got {n}"));
    }
    if base < 4 || !base.is_power_of_two() {
        return invalid(format!(
            "B must be a power of two and at least 4, got {base}"
        ));
    }
    if c2 <= Rational::from_integer(0) {
        return invalid(format!("c2 must be positive, got {c2}"));
    }
    let c2_big = BigRational::new(BigInt::from(*c2.numer()), BigInt::from(*c2.denom()));
    let n_big = big(n as u128);
    // Smallest m >= 1 with 2 B^m >= c2 n / ln ln n, i.e. ln ln n >= c2 n / (2 B^m).
    let mut m = 1u32;
    let mut half: u128 = base as u128;
    while !ln_ln_at_least(&n_big, &(&c2_big * &n_big / big(2 * half))) {
        m += 1;
        half = half
            .checked_mul(base as u128)
            .filter(|&h| h <= 1 << 40)
            .ok_or_else(|| crate::error::Error::ConstructionInfeasible("k exceeds 2^41".into()))?;
    }
    let half = half as u64;
    let k = 2 * half;

    let mut c_sizes = Vec::with_capacity(m as usize);
    let mut d_sizes = Vec::with_capacity(m as usize);
    let mut mu = Vec::with_capacity(m as usize);
    let mut hypotheses = Vec::with_capacity(m as usize);
    let mut prev = 0u64;
    let mut power = 1u64;
    for _ in 1..=m {
        power *= base;
        let c = 2 * power;
        c_sizes.push(c);
        d_sizes.push(c - prev);
        mu.push(Rational::new((n as i128) * (c - prev) as i128, k as i128));
        hypotheses.push(Semicircle::left_closed(angle_from_turns(
            power as i128,
            k as i128,
        )?));
        prev = c;
    }

    let mut atom_band = vec![0u8; k as usize];
    for (j, slot) in atom_band.iter_mut().enumerate() {
        let r = (j as u64) % half;
        let mut i = 1u8;
        let mut reach = base;
        while r >= reach {
            reach *= base;
            i += 1;
        }
        *slot = i;
    }

    let target = Semicircle::left_closed(Angle::ZERO);
    let dist = LabeledDist::uniform_circle(k as usize, &target)?;
    Ok(DyadicConstruction {
        n,
        k,
        base,
        bands: m,
        c_sizes,
        d_sizes,
        mu,
        hypotheses,
        target,
        atom_band,
        dist: Some(dist),
    })
}

impl DyadicConstruction {
    pub fn dist(&self) -> &LabeledDist {
        self.dist.as_ref().expect("constructed in memory")
    }

    /// Band of atom `j` (1-based): the `i` with `j` in `D_i`.
    pub fn band_of(&self, j: usize) -> u32 {
        self.atom_band[j] as u32
    }

    /// `|S cap D_i|` for `i = 1..=m`.
    pub fn ring_counts(&self, sample: &Sample) -> Vec<u64> {
        let mut counts = vec![0u64; self.bands as usize];
        for (j, c) in sample.nonzero() {
            counts[self.atom_band[j] as usize - 1] += c;
        }
        counts
    }

    /// `|S cap C_i|` for `i = 1..=m`.
    pub fn cumulative_counts(&self, sample: &Sample) -> Vec<u64> {
        self.ring_counts(sample)
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }

    /// `ln(log_B k)`.
    pub fn log_log_term(&self) -> f64 {
        ((self.k as f64).log2() / (self.base as f64).log2()).ln()
    }

    pub fn trial(&self, n: u64, seed: u64, constants: &Constants) -> Result<TrialOutcome> {
        let sample = draw(self.dist(), n, seed);
        self.evaluate(&sample, seed, constants)
    }

    pub fn evaluate(
        &self,
        sample: &Sample,
        seed: u64,
        constants: &Constants,
    ) -> Result<TrialOutcome> {
        let n = sample.n();
        let mut out = TrialOutcome::new(TAG, seed, n, Some(2));
        out.extra_int("k", self.k as i128);
        out.extra_int("B", self.base as i128);
        out.extra_int("bands", self.bands as i128);

        let ring = self.ring_counts(sample);
        let c = to_f64(&constants.thm7_deficit_c);
        let l = self.log_log_term();
        let gap = |i: usize| c * (to_f64(&self.mu[i]) * l).sqrt();
        let fired = (0..ring.len()).find(|&i| (ring[i] as f64) < to_f64(&self.mu[i]) - gap(i));
        let two = Rational::from_integer(2);
        let within_cap = |i: usize| Rational::from_integer(ring[i] as i128) <= two * self.mu[i];
        out.flag("cap_all", (0..ring.len()).all(within_cap));
        for (i, &count) in ring.iter().enumerate() {
            out.extra_int(&format!("count_d{}", i + 1), count as i128);
            out.extra(&format!("mu_{}", i + 1), self.mu[i]);
        }
        out.flag("deficit_fired", fired.is_some());
        out.flag("no_deficit", fired.is_none());
        let Some(i) = fired else {
            out.flag("event", false);
            return Ok(out);
        };
        out.band = Some(i as u32 + 1);
        let h = &self.hypotheses[i];
        let er_d = true_error(self.dist(), h)?;
        let er_s = if n == 0 {
            Rational::from_integer(0)
        } else {
            empirical_error(sample, self.dist(), h)?
        };
        out.set_errors(er_d, er_s);
        out.consistent = er_s == Rational::from_integer(0);
        out.witness = Witness::Semicircle {
            alpha: h.alpha,
            closure: h.closure,
        };
        out.flag(
            "er_d_identity",
            er_d == Rational::new(self.c_sizes[i] as i128, self.k as i128),
        );
        let c_count: u64 = ring[..=i].iter().sum();
        out.flag(
            "er_s_identity",
            n > 0 && er_s == Rational::new(c_count as i128, n as i128),
        );

        let target = bound_value(
            BoundKind::Thm7Target,
            &BoundParams::new(n.max(16)).er_s(to_f64(&er_s)),
            constants,
        )?;
        out.success = to_f64(&out.deviation) >= target;

        // The deficit display: n (er_D - er_S) >= (c/2) sqrt(mu_i ln log_B k).
        let scaled_dev = to_f64(&(out.deviation * Rational::from_integer(n as i128)));
        let display = scaled_dev >= gap(i) / 2.0;
        out.flag("display", display);
        out.flag("event", out.flag_set("cap_all") && display);

        // Counting chain behind the display, valid whenever the lower rings
        // respect their caps: n er_S <= n er_D + sum_{j<i} mu_j - c sqrt(mu_i L).
        if (0..i).all(within_cap) {
            let lower: f64 = self.mu[..i].iter().map(to_f64).sum();
            let lhs = c_count as f64;
            let rhs = to_f64(&(er_d * Rational::from_integer(n as i128))) + lower - gap(i);
            out.flag("chain_bound", lhs <= rhs + 1e-9);
        }
        Ok(out)
    }
}

pub fn thm7_trial(
    n: u64,
    seed: u64,
    cons: &DyadicConstruction,
    constants: &Constants,
) -> Result<TrialOutcome> {
    cons.trial(n, seed, constants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Label;

    #[test]
    fn construction_examples() {
        let cons = thm7_construct(65536, 4, Rational::new(1, 100)).unwrap();
        assert_eq!((cons.k, cons.bands), (512, 4));
        assert_eq!(cons.c_sizes, vec![8, 32, 128, 512]);
        assert_eq!(cons.d_sizes, vec![8, 24, 96, 384]);
        let c1: Vec<usize> = (0..512).filter(|&j| cons.band_of(j) == 1).collect();
        assert_eq!(c1, vec![0, 1, 2, 3, 256, 257, 258, 259]);

        let big = thm7_construct(1 << 20, 4, Rational::new(1, 100)).unwrap();
        assert_eq!((big.k, big.bands), (8192, 6));
        assert_eq!(big.mu[0], Rational::from_integer(1024));
    }

    #[test]
    fn hypotheses_misclassify_exactly_c_i() {
        let cons = thm7_construct(65536, 4, Rational::new(1, 100)).unwrap();
        let dist = cons.dist();
        for (i, h) in cons.hypotheses.iter().enumerate() {
            let wrong: Vec<usize> = (0..dist.len())
                .filter(|&j| h.classify(&dist.angle(j).unwrap()) != dist.label(j))
                .collect();
            let expected: Vec<usize> = (0..dist.len())
                .filter(|&j| cons.band_of(j) as usize <= i + 1)
                .collect();
            assert_eq!(wrong, expected, "band {}", i + 1);
        }
        assert_eq!(dist.label(0), Label::Pos);
        assert_eq!(dist.label(256), Label::Neg);
    }

    #[test]
    fn rejects_bad_parameters() {
        let c = Rational::new(1, 100);
        assert!(thm7_construct(15, 4, c).is_err());
        assert!(thm7_construct(1024, 6, c).is_err());
        assert!(thm7_construct(1024, 2, c).is_err());
    }

    #[test]
    fn counts_nest() {
        let consts = Constants::default();
        let cons = thm7_construct(65536, 4, Rational::new(1, 100)).unwrap();
        for seed in 0..10 {
            let s = draw(cons.dist(), 4096, seed);
            let ring = cons.ring_counts(&s);
            let cum = cons.cumulative_counts(&s);
            assert!(cum.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(*cum.last().unwrap(), 4096);
            assert_eq!(ring.iter().sum::<u64>(), 4096);
            let out = cons.evaluate(&s, seed, &consts).unwrap();
            if out.flag_set("deficit_fired") {
                assert!(out.flag_set("er_d_identity") && out.flag_set("er_s_identity"));
            }
        }
    }
}
