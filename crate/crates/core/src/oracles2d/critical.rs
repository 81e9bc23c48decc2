use serde::{Deserialize, Serialize};

use crate::distributions::LabeledDist;
use crate::error::{invalid, Error, Result};
use crate::geometry::{g_coordinate, h_coordinate, Angle, Closure, Semicircle};
use crate::rational::Rational;

/// Critical wedge radii around a reference semicircle.
///
/// `t_plus` is the smallest `t` with `mu(G_t) >= epsilon`; it is attained
/// because `mu(G_t)` is right-continuous. `t_minus` is the infimum of the
/// `t` with `mu(H_t) >= epsilon`, which `H_t` only reaches just above it, so
/// it can be zero. Either is `None` when no radius up to a half turn carries
/// mass `epsilon`, which happens only for `epsilon > 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalRadii {
    pub t_plus: Option<Angle>,
    pub t_minus: Option<Angle>,
    #[serde(with = "crate::rational::json")]
    pub epsilon: Rational,
}

type Weighted = Vec<(Angle, u64)>;

/// Wedge coordinates of every atom relative to `reference`, with weights.
pub(crate) fn relative_coordinates(
    dist: &LabeledDist,
    reference: &Semicircle,
) -> Result<(Weighted, Weighted)> {
    if reference.closure != Closure::LeftOpenRightClosed {
        return invalid("critical wedges are defined around a left-open reference");
    }
    let mut g = Vec::with_capacity(dist.len());
    let mut h = Vec::with_capacity(dist.len());
    for i in 0..dist.len() {
        let theta = dist
            .angle(i)
            .ok_or_else(|| Error::InvalidInput("planar atoms required".into()))?;
        let rel = theta.checked_sub(&reference.alpha).ok_or_else(|| {
            Error::InvalidInput("relative angle exceeds the denominator bound".into())
        })?;
        g.push((g_coordinate(&rel), dist.weight(i)));
        h.push((h_coordinate(&rel), dist.weight(i)));
    }
    g.sort_unstable_by_key(|a| a.0);
    h.sort_unstable_by_key(|a| a.0);
    Ok((g, h))
}

/// First coordinate whose cumulative weight (inclusive) reaches `need`.
fn first_reaching(sorted: &[(Angle, u64)], epsilon: &Rational, total: u64) -> Option<Angle> {
    let mut acc: u128 = 0;
    let mut i = 0;
    while i < sorted.len() {
        let c = sorted[i].0;
        while i < sorted.len() && sorted[i].0 == c {
            acc += sorted[i].1 as u128;
            i += 1;
        }
        // acc / total >= eps
        if acc as i128 * epsilon.denom() >= epsilon.numer() * total as i128 {
            return Some(c);
        }
    }
    None
}

pub fn critical_radii(
    dist: &LabeledDist,
    epsilon: Rational,
    reference: &Semicircle,
) -> Result<CriticalRadii> {
    if epsilon <= Rational::from_integer(0) {
        return invalid(format!("epsilon must be positive, got {epsilon}"));
    }
    let (g, h) = relative_coordinates(dist, reference)?;
    let total = dist.total_weight();
    Ok(CriticalRadii {
        t_plus: first_reaching(&g, &epsilon, total),
        t_minus: first_reaching(&h, &epsilon, total),
        epsilon,
    })
}

/// `mu(G_t)` (`open = false`) or `mu(G°_t)` (`open = true`) around `reference`.
pub fn g_wedge_mass(
    dist: &LabeledDist,
    reference: &Semicircle,
    t: &Angle,
    open: bool,
) -> Result<Rational> {
    let (g, _) = relative_coordinates(dist, reference)?;
    let w: u64 = g
        .iter()
        .filter(|(c, _)| if open { c < t } else { c <= t })
        .map(|p| p.1)
        .sum();
    Ok(dist.ratio(w))
}

/// `mu(H_t)` (`open = false`) or `mu(H°_t)` (`open = true`) around `reference`.
pub fn h_wedge_mass(
    dist: &LabeledDist,
    reference: &Semicircle,
    t: &Angle,
    open: bool,
) -> Result<Rational> {
    let (_, h) = relative_coordinates(dist, reference)?;
    let w: u64 = h
        .iter()
        .filter(|(c, _)| c < t && !(open && c.is_zero()))
        .map(|p| p.1)
        .sum();
    Ok(dist.ratio(w))
}
