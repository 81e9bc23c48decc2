//! Closed-form worst consistent error for a realizable planar distribution.
//!
//! Relative to the target `I_0`, the shift `I_t` with `t in (0, pi]` errs
//! exactly on `G_t` and `I_{-t}` errs exactly on `H_t`. A shift is
//! consistent iff its wedge avoids every sampled direction, so the worst
//! consistent `G`-shift errs on `{coordG < g}` where `g` is the smallest
//! sampled `G` coordinate, and likewise for `H`. Precomputing, per atom, the
//! mass of atoms with strictly smaller coordinate turns each query into a
//! minimum over the sampled atoms.

use crate::distributions::{LabeledDist, Sample};
use crate::error::{invalid, Error, Result};
use crate::geometry::{g_coordinate, h_coordinate, Angle, Closure, Semicircle};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct VersionSpaceIndex {
    total: u64,
    below_g: Vec<u64>,
    below_h: Vec<u64>,
}

/// Per atom, the weight of atoms whose coordinate is strictly smaller.
fn strictly_below(coords: &[Angle], weights: &[u64]) -> Vec<u64> {
    let mut order: Vec<u32> = (0..coords.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| coords[a as usize].cmp(&coords[b as usize]));
    let mut out = vec![0u64; coords.len()];
    let mut acc = 0u64;
    let mut start = 0;
    while start < order.len() {
        let c = coords[order[start] as usize];
        let mut end = start;
        let mut group = 0u64;
        while end < order.len() && coords[order[end] as usize] == c {
            out[order[end] as usize] = acc;
            group += weights[order[end] as usize];
            end += 1;
        }
        acc += group;
        start = end;
    }
    out
}

impl VersionSpaceIndex {
    /// Requires a left-open target that realizes `dist`.
    pub fn new(dist: &LabeledDist, target: &Semicircle) -> Result<Self> {
        if target.closure != Closure::LeftOpenRightClosed {
            return invalid("the closed-form route is stated for left-open targets");
        }
        if !dist.is_realized_by(target)? {
            return Err(Error::InvalidInput(
                "distribution is not realized by the target".into(),
            ));
        }
        let mut g = Vec::with_capacity(dist.len());
        let mut h = Vec::with_capacity(dist.len());
        for i in 0..dist.len() {
            let theta = dist
                .angle(i)
                .ok_or_else(|| Error::InvalidInput("planar atoms required".into()))?;
            let rel = theta.checked_sub(&target.alpha).ok_or_else(|| {
                Error::InvalidInput("relative angle exceeds the denominator bound".into())
            })?;
            g.push(g_coordinate(&rel));
            h.push(h_coordinate(&rel));
        }
        Ok(Self {
            total: dist.total_weight(),
            below_g: strictly_below(&g, dist.weights()),
            below_h: strictly_below(&h, dist.weights()),
        })
    }

    /// Worst consistent error times `total_weight`.
    pub fn worst_weight(&self, sample: &Sample) -> u64 {
        let mut g = self.total;
        let mut h = self.total;
        for (i, _) in sample.nonzero() {
            g = g.min(self.below_g[i]);
            h = h.min(self.below_h[i]);
        }
        if sample.n() == 0 {
            return self.total;
        }
        g.max(h)
    }

    pub fn worst_consistent_error(&self, sample: &Sample) -> Rational {
        Rational::new(self.worst_weight(sample) as i128, self.total as i128)
    }
}
