//! Interval estimates, order statistics and rate fits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{invalid, Result};
use crate::rational::{big_to_f64, to_big, Rational};

/// Two-sided 95% normal quantile, fixed to six digits.
pub const Z95: f64 = 1.959964;

fn z_for(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return invalid(format!("confidence level {level} outside (0, 1)"));
    }
    if level == 0.95 {
        return Ok(Z95);
    }
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(normal.inverse_cdf(0.5 + level / 2.0))
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, level: f64) -> Result<(f64, f64)> {
    if trials == 0 || successes > trials {
        return invalid(format!("invalid counts {successes}/{trials}"));
    }
    let z = z_for(level)?;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    Ok((lo, hi))
}

/// Half-width of the Wilson interval.
pub fn wilson_half_width(successes: u64, trials: u64, level: f64) -> Result<f64> {
    let (lo, hi) = wilson_interval(successes, trials, level)?;
    Ok((hi - lo) / 2.0)
}

/// Nearest-rank quantile of already sorted values: the element at rank
/// `ceil(q * len)` (1-based), clamped to the first element.
pub fn nearest_rank<T: Clone>(sorted: &[T], q: f64) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    let rank = (q * sorted.len() as f64).ceil() as usize;
    Some(sorted[rank.clamp(1, sorted.len()) - 1].clone())
}

/// Mean of exact rationals, accumulated without rounding.
pub fn exact_mean(values: &[Rational]) -> Option<BigRational> {
    if values.is_empty() {
        return None;
    }
    let sum = values
        .iter()
        .fold(BigRational::zero(), |acc, v| acc + to_big(v));
    Some(sum / BigRational::from_integer(BigInt::from(values.len())))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalStats {
    pub mean: f64,
    #[serde(with = "crate::rational::json")]
    pub median: Rational,
    #[serde(with = "crate::rational::json")]
    pub p95: Rational,
}

impl RationalStats {
    pub fn of(values: &[Rational]) -> Option<Self> {
        let mut sorted = values.to_vec();
        sorted.sort();
        Some(Self {
            mean: big_to_f64(&exact_mean(values)?),
            median: nearest_rank(&sorted, 0.5)?,
            p95: nearest_rank(&sorted, 0.95)?,
        })
    }
}

/// Constant versus logarithmic model for `y = n * measured`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelComparison {
    /// Slope of `y = a ln n + b`.
    pub a: f64,
    pub b: f64,
    pub slope_ci: (f64, f64),
    /// Residual sum of squares of the best constant `y = mean(y)`.
    pub rss_constant: f64,
    pub rss_log: f64,
    /// Whether the slope interval lies strictly above zero.
    pub log_growth: bool,
    pub points: usize,
}

/// Least-squares fit of `n * measured` against `(ln n, 1)` with a 95%
/// Student-t interval on the slope.
pub fn fit_rate(points: &[(u64, f64)]) -> Result<ModelComparison> {
    let mut distinct: Vec<u64> = points.iter().map(|p| p.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return invalid("fit_rate needs at least three distinct n");
    }
    if points.iter().any(|&(n, m)| n == 0 || !m.is_finite()) {
        return invalid("fit_rate needs positive n and finite measurements");
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.0 as f64 * p.1).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let rss_log: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - a * x - b).powi(2))
        .sum();
    let rss_constant: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let dof = k - 2.0;
    let se = (rss_log / dof / sxx).sqrt();
    let t = StudentsT::new(0.0, 1.0, dof)
        .expect("positive dof")
        .inverse_cdf(0.975);
    let slope_ci = (a - t * se, a + t * se);
    Ok(ModelComparison {
        a,
        b,
        slope_ci,
        rss_constant,
        rss_log,
        log_growth: slope_ci.0 > 0.0,
        points: points.len(),
    })
}

/// Ranks with ties sharing their average rank (1-based).
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &o in &order[i..=j] {
            out[o] = avg;
        }
        i = j + 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankCorrelation {
    pub rho: f64,
    pub n: usize,
    /// 95% interval from the Fisher transform with the `1.06 / (n - 3)`
    /// variance used for rank correlations.
    pub ci: (f64, f64),
}

/// Spearman rank correlation (Pearson correlation of average ranks).
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<RankCorrelation> {
    if xs.len() != ys.len() || xs.len() < 4 {
        return invalid("spearman needs two equally long samples of at least four values");
    }
    let rx = ranks(xs);
    let ry = ranks(ys);
    let n = rx.len() as f64;
    let m = (n + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - m) * (b - m);
        sxx += (a - m).powi(2);
        syy += (b - m).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return invalid("spearman is undefined for a constant sample");
    }
    let rho = sxy / (sxx * syy).sqrt();
    let z = rho.clamp(-0.999_999_999, 0.999_999_999).atanh();
    let se = (1.06 / (n - 3.0)).sqrt();
    let ci = ((z - Z95 * se).tanh(), (z + Z95 * se).tanh());
    Ok(RankCorrelation {
        rho,
        n: rx.len(),
        ci,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_examples() {
        let (lo, hi) = wilson_interval(0, 10, 0.95).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - 0.2775).abs() < 1e-4, "{hi}");
        let (lo, hi) = wilson_interval(10, 10, 0.95).unwrap();
        assert_eq!(hi, 1.0);
        assert!((lo - 0.7225).abs() < 1e-4);
        let (lo, hi) = wilson_interval(5, 10, 0.95).unwrap();
        assert!((lo - 0.2366).abs() < 1e-4 && (hi - 0.7634).abs() < 1e-4);
        assert!(wilson_interval(3, 2, 0.95).is_err());
        assert!(wilson_interval(0, 0, 0.95).is_err());
        let (lo99, hi99) = wilson_interval(5, 10, 0.99).unwrap();
        assert!(lo99 < lo && hi99 > hi);
    }

    #[test]
    fn nearest_rank_quantiles() {
        let v: Vec<u32> = (1..=20).collect();
        assert_eq!(nearest_rank(&v, 0.5), Some(10));
        assert_eq!(nearest_rank(&v, 0.95), Some(19));
        assert_eq!(nearest_rank(&v, 0.0), Some(1));
        assert_eq!(nearest_rank::<u32>(&[], 0.5), None);
    }

    #[test]
    fn fit_examples() {
        let ns = [256u64, 1024, 4096, 16384, 65536];
        let constant: Vec<(u64, f64)> = ns.iter().map(|&n| (n, 5.0 / n as f64)).collect();
        let f = fit_rate(&constant).unwrap();
        assert!(f.a.abs() < 1e-12 && f.rss_constant < 1e-20);
        assert!(!f.log_growth);
        let log: Vec<(u64, f64)> = ns
            .iter()
            .map(|&n| (n, (n as f64).ln() / n as f64))
            .collect();
        let f = fit_rate(&log).unwrap();
        assert!((f.a - 1.0).abs() < 1e-12 && f.b.abs() < 1e-10 && f.rss_log < 1e-20);
        assert!(f.log_growth);
        assert!(fit_rate(&constant[..2]).is_err());
    }

    #[test]
    fn spearman_basics() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let r = spearman(&x, &[2.0, 4.0, 9.0, 16.0, 30.0, 31.0]).unwrap();
        assert!((r.rho - 1.0).abs() < 1e-12);
        let r = spearman(&x, &[6.0, 5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
        assert!((r.rho + 1.0).abs() < 1e-12);
        // Ties share ranks.
        let r = spearman(&[1.0, 1.0, 2.0, 2.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(r.rho > 0.8 && r.rho < 1.0);
    }
}
