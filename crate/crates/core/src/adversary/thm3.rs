//! Agnostic lower bound. Under the all-positive target, points sampled well
//! below their expected multiplicity are relabelled negative by the
//! hypothesis, whose true error is then fixed while its empirical error
//! falls short by the deficit.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{all_positive_setup, draw, TrialOutcome, Witness};
use crate::bounds::{binom_lower_quantile_exact, bound_value, BoundKind, BoundParams};
use crate::constants::Constants;
use crate::distributions::{empirical_error, true_error, LabeledDist, Sample};
use crate::error::{invalid, Error, Result};
use crate::geometry::{realize_labeling, BlockLabeling, StructuredSupport};
use crate::rational::{to_f64, Rational};

pub const TAG: &str = "agnostic-lb";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thm3Params {
    pub n: u64,
    pub d: u64,
    pub k: u64,
    /// Deficit below the mean multiplicity.
    pub t: u64,
    /// `2 ceil(d / divisor) / (k d)`, the true error of every hypothesis built.
    #[serde(with = "crate::rational::json")]
    pub tau_adj: Rational,
    /// `ceil(d / divisor)` blocks receive a negative.
    pub blocks_needed: u64,
    /// Mean multiplicity `2n / (d k)` of a point.
    #[serde(with = "crate::rational::json")]
    pub mu: Rational,
    /// Largest multiplicity that still qualifies, `floor(mu - t)`.
    pub max_multiplicity: u64,
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Integral `k`, the adjusted `tau`, and the deficit `t`.
pub fn thm3_params(n: u64, d: u64, tau: Rational, constants: &Constants) -> Result<Thm3Params> {
    if d < 2 || !d.is_multiple_of(2) {
        return invalid(format!("dimension must be even and >= 2, got {d}"));
    }
    if n <= d {
        return invalid(format!("need n > d, got n = {n}, d = {d}"));
    }
    let c1 = to_f64(&constants.thm3_c1);
    let tf = to_f64(&tau);
    let lo = c1 * d as f64 * (n as f64 / d as f64).ln() / n as f64;
    if !(tau > Rational::from_integer(0)) || tf < lo || tf > 1.0 / c1 {
        return invalid(format!(
            "tau = {tau} outside the admissible range [{lo:.6}, {:.6}]",
            1.0 / c1
        ));
    }
    let divisor = constants.thm3_block_divisor;
    if *divisor.denom() != 1 || *divisor.numer() < 1 {
        return invalid("thm3_block_divisor must be a positive integer");
    }
    let blocks_needed = ceil_div(d, *divisor.numer() as u64);
    // k = round(2m / (tau d)), halves rounding up.
    let exact = Rational::from_integer(2 * blocks_needed as i128)
        / (tau * Rational::from_integer(d as i128));
    let k = (exact + Rational::new(1, 2)).floor().to_integer().max(1) as u64;
    let tau_adj = Rational::new(2 * blocks_needed as i128, (k * d) as i128);
    let mu = Rational::new(2 * n as i128, (d * k) as i128);
    let p = Rational::new(2, (d * k) as i128);
    if p > Rational::from_integer(1) {
        return Err(Error::ConstructionInfeasible(format!(
            "success probability 2/(dk) = {p} exceeds 1"
        )));
    }
    // t = floor(mu - j*), j* the smallest j with Pr(Z <= j) >= 1/(8k).
    let target = BigRational::new(BigInt::from(1), BigInt::from(8 * k));
    let j_star = binom_lower_quantile_exact(n, &p, &target).expect("target at most one");
    let diff = mu - Rational::from_integer(j_star as i128);
    let t = diff.floor().to_integer();
    if t < 1 {
        return Err(Error::ConstructionInfeasible(format!(
            "deficit t = {t} < 1 (n = {n}, d = {d}, k = {k})"
        )));
    }
    let t = t as u64;
    let max_multiplicity = (mu - Rational::from_integer(t as i128))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0);
    Ok(Thm3Params {
        n,
        d,
        k,
        t,
        tau_adj,
        blocks_needed,
        mu,
        max_multiplicity,
    })
}

/// Prepared agnostic lower-bound construction.
#[derive(Clone, Debug)]
pub struct Thm3Construction {
    params: Thm3Params,
    support: Arc<StructuredSupport>,
    dist: LabeledDist,
    constants: Constants,
}

impl Thm3Construction {
    pub fn new(n: u64, d: u64, tau: Rational, constants: &Constants) -> Result<Self> {
        let params = thm3_params(n, d, tau, constants)?;
        if params.k < 2 {
            return Err(Error::ConstructionInfeasible(format!(
                "block size k = {} < 2 (tau adjusted to {})",
                params.k, params.tau_adj
            )));
        }
        let (support, _, dist) = all_positive_setup(d as usize, params.k as usize)?;
        Ok(Self {
            params,
            support,
            dist,
            constants: constants.clone(),
        })
    }

    pub fn params(&self) -> &Thm3Params {
        &self.params
    }

    pub fn dist(&self) -> &LabeledDist {
        &self.dist
    }

    pub fn trial(&self, seed: u64) -> Result<TrialOutcome> {
        let sample = draw(&self.dist, self.params.n, seed);
        self.evaluate(&sample, seed)
    }

    pub fn evaluate(&self, sample: &Sample, seed: u64) -> Result<TrialOutcome> {
        let p = &self.params;
        let k = p.k as usize;
        let mut out = TrialOutcome::new(TAG, seed, sample.n(), Some(p.d));
        out.extra_int("k", p.k as i128);
        out.extra_int("t", p.t as i128);
        out.extra("mu", p.mu);
        out.extra("tau_adj", p.tau_adj);

        let qualifying: Vec<(usize, usize)> = (0..self.support.blocks())
            .filter_map(|b| {
                (0..k)
                    .find(|&j| sample.count(self.support.flat_index(b, j)) <= p.max_multiplicity)
                    .map(|j| (b, j))
            })
            .collect();
        out.extra_int("qualifying_blocks", qualifying.len() as i128);
        let enough = qualifying.len() as u64 >= p.blocks_needed;
        out.flag("not_enough_deficit_blocks", !enough);
        if !enough {
            return Ok(out);
        }

        let mut neg = vec![None; self.support.blocks()];
        for &(b, j) in qualifying.iter().take(p.blocks_needed as usize) {
            neg[b] = Some(j);
        }
        let y = BlockLabeling::new(&self.support, neg)?;
        let h = realize_labeling(&self.support, &y)?;
        let er_d = true_error(&self.dist, &h)?;
        let er_s = empirical_error(sample, &self.dist, &h)?;
        out.set_errors(er_d, er_s);
        out.consistent = er_s == Rational::from_integer(0);
        out.witness = Witness::Halfspace {
            k,
            negatives: y.negatives().to_vec(),
        };

        let target = bound_value(
            BoundKind::Thm3Target,
            &BoundParams::new(p.n).d(p.d).er_s(to_f64(&er_s)),
            &self.constants,
        )?;
        out.success = to_f64(&out.deviation) >= target;
        let two = Rational::from_integer(2);
        out.flag(
            "sandwich",
            p.tau_adj / two <= er_s && er_s <= two * p.tau_adj,
        );
        out.flag("er_d_exact", er_d == p.tau_adj);
        let cap = Rational::new(
            (p.blocks_needed * p.max_multiplicity) as i128,
            sample.n().max(1) as i128,
        );
        out.flag("multiplicity_bound", er_s <= cap);
        Ok(out)
    }
}

pub fn thm3_trial(
    n: u64,
    d: u64,
    tau: Rational,
    seed: u64,
    constants: &Constants,
) -> Result<TrialOutcome> {
    Thm3Construction::new(n, d, tau, constants)?.trial(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::binom_lower_exact;

    #[test]
    fn params_examples() {
        let c = Constants::default();
        let p = thm3_params(4096, 2, Rational::new(1, 64), &c).unwrap();
        assert_eq!(
            (p.k, p.tau_adj, p.blocks_needed),
            (64, Rational::new(1, 64), 1)
        );
        assert_eq!(p.mu, Rational::from_integer(64));
        // Regression fixture, confirmed against the exact tail below.
        assert_eq!(p.t, 22);
        let bin_p = Rational::new(1, 64);
        let lim = BigRational::new(BigInt::from(1), BigInt::from(512));
        assert!(binom_lower_exact(4096, &bin_p, 64 - p.t) >= lim);
        assert!(binom_lower_exact(4096, &bin_p, 64 - p.t - 1) < lim);

        let p = thm3_params(200_000, 512, Rational::new(1, 64), &c).unwrap();
        assert_eq!(
            (p.k, p.tau_adj, p.blocks_needed),
            (1, Rational::new(1, 128), 2)
        );
        assert!(matches!(
            Thm3Construction::new(200_000, 512, Rational::new(1, 64), &c),
            Err(Error::ConstructionInfeasible(_))
        ));
    }

    #[test]
    fn params_reject_bad_tau() {
        let c = Constants::default();
        assert!(thm3_params(4096, 2, Rational::new(1, 10_000), &c).is_err());
        assert!(thm3_params(4096, 2, Rational::new(2, 1), &c).is_err());
        assert!(thm3_params(2, 2, Rational::new(1, 2), &c).is_err());
    }

    #[test]
    fn balanced_sample_has_no_deficit() {
        let c = Constants::default();
        let cons = Thm3Construction::new(4096, 2, Rational::new(1, 64), &c).unwrap();
        let sample = Sample::from_counts(cons.dist(), &[64; 64]).unwrap();
        let out = cons.evaluate(&sample, 0).unwrap();
        assert!(!out.success && out.flag_set("not_enough_deficit_blocks"));
    }

    #[test]
    fn fired_trials_have_exact_error() {
        let c = Constants::default();
        let cons = Thm3Construction::new(4096, 2, Rational::new(1, 64), &c).unwrap();
        let mut fired = 0;
        for seed in 0..200 {
            let out = cons.trial(seed).unwrap();
            if !out.flag_set("not_enough_deficit_blocks") {
                fired += 1;
                assert_eq!(out.er_d, Rational::new(1, 64));
                assert!(out.flag_set("multiplicity_bound"));
                assert!(out.deviation > Rational::from_integer(0));
            }
        }
        assert!(fired > 0);
    }
}
