//! Realizable lower bound: the uniform distribution on the structured support
//! with the all-positive target. Every block with an unsampled point gets
//! that point as its negative, which the realizing halfspace reproduces while
//! staying consistent with the sample.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{all_positive_setup, draw, TrialOutcome, Witness};
use crate::bounds::hp::ln_at_least;
use crate::constants::Constants;
use crate::distributions::{empirical_error, empirical_mistakes, true_error, LabeledDist, Sample};
use crate::error::{invalid, Result};
use crate::geometry::{realize_labeling, BlockLabeling, StructuredSupport};
use crate::rational::{to_f64, Rational};

pub const TAG: &str = "inhom-realizable";

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `ceil(8n / (d ln(n/d)))`, decided exactly.
pub fn thm2_params(n: u64, d: u64) -> Result<u64> {
    if d < 2 || !d.is_multiple_of(2) {
        return invalid(format!("dimension must be even and >= 2, got {d}"));
    }
    if n <= d {
        return invalid(format!("need n > d, got n = {n}, d = {d}"));
    }
    let ratio = big(n) / big(d);
    // k d ln(n/d) >= 8n  <=>  ln(n/d) >= 8n / (k d)
    let covers = |k: u64| k > 0 && ln_at_least(&ratio, &(big(8 * n) / big(k * d)));
    let guess = (8.0 * n as f64 / (d as f64 * (n as f64 / d as f64).ln())).ceil();
    let mut k = if guess.is_finite() && guess >= 1.0 {
        guess as u64
    } else {
        1
    };
    while !covers(k) {
        k += 1;
    }
    while k > 1 && covers(k - 1) {
        k -= 1;
    }
    Ok(k)
}

/// Prepared realizable lower-bound construction for one `(n, d, k)`.
#[derive(Clone, Debug)]
pub struct Thm2Construction {
    n: u64,
    d: usize,
    k: usize,
    support: Arc<StructuredSupport>,
    dist: LabeledDist,
    target_error: f64,
    block_fraction: Rational,
}

impl Thm2Construction {
    /// `k` defaults to [`thm2_params`]; an override is used as given.
    pub fn new(n: u64, d: u64, k_override: Option<u64>, constants: &Constants) -> Result<Self> {
        let k = match k_override {
            Some(k) => {
                if d < 2 || !d.is_multiple_of(2) {
                    return invalid(format!("dimension must be even and >= 2, got {d}"));
                }
                k
            }
            None => thm2_params(n, d)?,
        };
        let (support, _, dist) = all_positive_setup(d as usize, k as usize)?;
        let nf = n as f64;
        let df = d as f64;
        let target_error = if n > d {
            df * (nf / df).ln() / (to_f64(&constants.thm2_denominator) * nf)
        } else {
            f64::INFINITY
        };
        Ok(Self {
            n,
            d: d as usize,
            k: k as usize,
            support,
            dist,
            target_error,
            block_fraction: constants.thm2_block_fraction,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dist(&self) -> &LabeledDist {
        &self.dist
    }

    pub fn support(&self) -> &StructuredSupport {
        &self.support
    }

    pub fn trial(&self, seed: u64) -> Result<TrialOutcome> {
        let sample = draw(&self.dist, self.n, seed);
        self.evaluate(&sample, seed)
    }

    /// Run the construction against a given sample.
    pub fn evaluate(&self, sample: &Sample, seed: u64) -> Result<TrialOutcome> {
        let blocks = self.support.blocks();
        let neg: Vec<Option<usize>> = (0..blocks)
            .map(|b| (0..self.k).find(|&j| sample.count(self.support.flat_index(b, j)) == 0))
            .collect();
        let y = BlockLabeling::new(&self.support, neg)?;
        let h = realize_labeling(&self.support, &y)?;
        let missing = y.negative_count();

        let mut out = TrialOutcome::new(TAG, seed, sample.n(), Some(self.d as u64));
        out.consistent = empirical_mistakes(sample, &self.dist, &h)? == 0;
        let er_s = if sample.n() == 0 {
            Rational::from_integer(0)
        } else {
            empirical_error(sample, &self.dist, &h)?
        };
        let er_d = true_error(&self.dist, &h)?;
        out.set_errors(er_d, er_s);
        out.success = out.consistent && to_f64(&er_d) >= self.target_error;
        out.flag("every_block_missing", missing == blocks);
        out.flag(
            "error_identity",
            er_d * Rational::from_integer(self.support.len() as i128)
                == Rational::from_integer(missing as i128),
        );
        out.flag(
            "enough_missing_blocks",
            Rational::from_integer(missing as i128)
                >= self.block_fraction * Rational::from_integer(self.d as i128),
        );
        out.extra_int("k", self.k as i128);
        out.extra_int("missing_blocks", missing as i128);
        out.witness = Witness::Halfspace {
            k: self.k,
            negatives: y.negatives().to_vec(),
        };
        Ok(out)
    }
}

/// One seeded trial with `k` from [`thm2_params`].
pub fn thm2_trial(n: u64, d: u64, seed: u64, constants: &Constants) -> Result<TrialOutcome> {
    Thm2Construction::new(n, d, None, constants)?.trial(seed)
}
