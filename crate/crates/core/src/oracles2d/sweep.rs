//! Rotating sweep over all shifts `alpha` of a planar semicircle.
//!
//! Atom `i` at direction `theta_i` is labelled `+1` by `h_alpha` for `alpha`
//! in a half-open arc with endpoints `theta_i + pi` and `theta_i`. The
//! sorted set of all such endpoints cuts the circle of shifts into open arcs
//! on which both errors are constant. With the left-open closure the value at
//! an endpoint equals the value on the arc that starts there, and with the
//! left-closed closure it equals the arc that ends there, so the arc values
//! already exhaust every hypothesis of either closure.
//!
//! Crossing `theta_i` counter-clockwise turns atom `i` negative; crossing
//! `theta_i + pi` turns it positive. Both deltas are fixed by the label, so
//! the sweep is a running sum.

use serde::{Deserialize, Serialize};

use crate::distributions::{DistMode, LabeledDist, Sample};
use crate::error::{Error, Result};
use crate::geometry::{Angle, Closure, Label, Semicircle};
use crate::rational::Rational;

/// Event structure of one planar distribution, reusable across samples.
#[derive(Clone, Debug)]
pub struct SweepIndex<'a> {
    dist: &'a LabeledDist,
    events: Vec<Angle>,
    dist_delta: Vec<i128>,
    /// Event positions of `theta_i` and `theta_i + pi`.
    atom_events: Vec<(u32, u32)>,
    /// Whether atom `i` is misclassified on the arc that wraps through zero.
    wrong_on_wrap: Vec<bool>,
    wrap_weight: i128,
}

/// An open arc of shifts, counter-clockwise from `start` to `end`. Equal
/// endpoints mean the whole circle minus that point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftArc {
    pub start: Angle,
    pub end: Angle,
}

impl ShiftArc {
    /// An exact shift strictly inside the arc.
    pub fn representative(&self) -> Angle {
        self.start.arc_midpoint(&self.end)
    }

    /// Whether `alpha` lies strictly inside the arc.
    pub fn contains(&self, alpha: &Angle) -> bool {
        let (x, d) = alpha.offset_from(&self.start);
        if x == 0 {
            return false;
        }
        let (y, e) = self.end.offset_from(&self.start);
        if y == 0 {
            return true;
        }
        x * e < y * d
    }
}

/// Errors of `h_alpha` on one arc, as integer weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcValue {
    pub arc: usize,
    /// Misclassified mass times `total_weight`.
    pub wrong_weight: u64,
    /// Misclassified sample points.
    pub wrong_count: u64,
}

impl<'a> SweepIndex<'a> {
    pub fn new(dist: &'a LabeledDist) -> Result<Self> {
        let mut angles = Vec::with_capacity(dist.len());
        for i in 0..dist.len() {
            match dist.angle(i) {
                Some(a) => angles.push(a),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "sweep needs planar directions, got {:?}",
                        dist.mode()
                    )))
                }
            }
        }
        if let DistMode::Structured { d, .. } = dist.mode() {
            debug_assert_eq!(d, 2);
        }

        let mut raw: Vec<(Angle, u32, bool)> = Vec::with_capacity(2 * angles.len());
        for (i, a) in angles.iter().enumerate() {
            raw.push((*a, i as u32, false));
            raw.push((a.add_half_turn(), i as u32, true));
        }
        raw.sort_unstable_by_key(|x| x.0);

        let mut events: Vec<Angle> = Vec::new();
        let mut dist_delta: Vec<i128> = Vec::new();
        let mut atom_events = vec![(0u32, 0u32); angles.len()];
        for (angle, atom, antipode) in raw {
            if events.last() != Some(&angle) {
                events.push(angle);
                dist_delta.push(0);
            }
            let e = (events.len() - 1) as u32;
            let i = atom as usize;
            let w = dist.weight(i) as i128;
            dist_delta[e as usize] += w * crossing_sign(dist.label(i), antipode) as i128;
            if antipode {
                atom_events[i].1 = e;
            } else {
                atom_events[i].0 = e;
            }
        }

        let m = events.len();
        let probe = Semicircle::left_open(events[m - 1].arc_midpoint(&events[0]));
        let wrong_on_wrap: Vec<bool> = angles
            .iter()
            .enumerate()
            .map(|(i, a)| probe.classify(a) != dist.label(i))
            .collect();
        let wrap_weight = wrong_on_wrap
            .iter()
            .enumerate()
            .filter(|(_, &w)| w)
            .map(|(i, _)| dist.weight(i) as i128)
            .sum();
        Ok(Self {
            dist,
            events,
            dist_delta,
            atom_events,
            wrong_on_wrap,
            wrap_weight,
        })
    }

    pub fn dist(&self) -> &LabeledDist {
        self.dist
    }

    /// Number of arcs (equal to the number of distinct events).
    pub fn arc_count(&self) -> usize {
        self.events.len()
    }

    pub fn events(&self) -> &[Angle] {
        &self.events
    }

    /// Arc `j` runs from event `j` to event `j + 1` (cyclically).
    pub fn arc(&self, j: usize) -> ShiftArc {
        let m = self.events.len();
        ShiftArc {
            start: self.events[j],
            end: self.events[(j + 1) % m],
        }
    }

    /// Visit every arc in order with its exact error weights.
    pub fn for_each_arc(&self, sample: &Sample, mut visit: impl FnMut(ArcValue)) -> Result<()> {
        if sample.atom_count() != self.dist.len() {
            return Err(Error::InvalidInput(
                "sample does not belong to this distribution".into(),
            ));
        }
        let mut sample_delta: Vec<(u32, i64)> = Vec::with_capacity(2 * sample.distinct());
        let mut wrong_count: i64 = 0;
        for (i, c) in sample.nonzero() {
            let c = c as i64;
            let (e, anti) = self.atom_events[i];
            let label = self.dist.label(i);
            sample_delta.push((e, c * crossing_sign(label, false)));
            sample_delta.push((anti, c * crossing_sign(label, true)));
            if self.wrong_on_wrap[i] {
                wrong_count += c;
            }
        }
        sample_delta.sort_unstable_by_key(|&(e, _)| e);

        let mut wrong_weight = self.wrap_weight;
        let mut next = sample_delta.iter().peekable();
        for j in 0..self.events.len() {
            wrong_weight += self.dist_delta[j];
            while let Some(&&(e, dc)) = next.peek() {
                if e as usize != j {
                    break;
                }
                wrong_count += dc;
                next.next();
            }
            debug_assert!(wrong_weight >= 0 && wrong_count >= 0);
            visit(ArcValue {
                arc: j,
                wrong_weight: wrong_weight as u64,
                wrong_count: wrong_count as u64,
            });
        }
        Ok(())
    }
}

/// Change in "atom is misclassified" when the shift crosses `theta`
/// (`antipode = false`) or `theta + pi` (`antipode = true`).
#[inline]
fn crossing_sign(label: Label, antipode: bool) -> i64 {
    match (label, antipode) {
        (Label::Pos, false) | (Label::Neg, true) => 1,
        _ => -1,
    }
}

/// Collects maximizing arcs, merging cyclically adjacent ones.
struct ArgmaxRuns {
    arcs: Vec<usize>,
}

impl ArgmaxRuns {
    fn new() -> Self {
        Self { arcs: Vec::new() }
    }

    fn reset(&mut self, j: usize) {
        self.arcs.clear();
        self.arcs.push(j);
    }

    fn push(&mut self, j: usize) {
        self.arcs.push(j);
    }

    fn into_arcs(self, index: &SweepIndex<'_>) -> Vec<ShiftArc> {
        let m = index.arc_count();
        if self.arcs.len() == m {
            let e = index.events[0];
            return vec![ShiftArc { start: e, end: e }];
        }
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &j in &self.arcs {
            match runs.last_mut() {
                Some((_, last)) if *last + 1 == j => *last = j,
                _ => runs.push((j, j)),
            }
        }
        if runs.len() > 1 && runs[0].0 == 0 && runs[runs.len() - 1].1 == m - 1 {
            let (_, end) = runs.remove(0);
            runs.last_mut().expect("nonempty").1 = end;
        }
        runs.into_iter()
            .map(|(a, b)| ShiftArc {
                start: index.events[a],
                end: index.events[(b + 1) % m],
            })
            .collect()
    }
}

/// Result of the worst-consistent-hypothesis search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstConsistent {
    #[serde(with = "crate::rational::json")]
    pub error: Rational,
    /// Maximal open arcs of consistent shifts attaining `error`.
    pub arcs: Vec<ShiftArc>,
}

/// Largest true error among shifts of `target`'s closure that make no
/// mistake on the sample.
pub fn worst_consistent_error(
    sample: &Sample,
    dist: &LabeledDist,
    target: &Semicircle,
) -> Result<WorstConsistent> {
    worst_consistent_with(&SweepIndex::new(dist)?, sample, target)
}

pub fn worst_consistent_with(
    index: &SweepIndex<'_>,
    sample: &Sample,
    target: &Semicircle,
) -> Result<WorstConsistent> {
    let dist = index.dist();
    if !dist.is_realized_by(target)? {
        return Err(Error::InvalidInput(
            "distribution is not realized by the target".into(),
        ));
    }
    let mut best: Option<u64> = None;
    let mut runs = ArgmaxRuns::new();
    index.for_each_arc(sample, |v| {
        if v.wrong_count != 0 {
            return;
        }
        match best {
            Some(b) if v.wrong_weight < b => {}
            Some(b) if v.wrong_weight == b => runs.push(v.arc),
            _ => {
                best = Some(v.wrong_weight);
                runs.reset(v.arc);
            }
        }
    })?;
    // The target's own arc is always consistent, so `best` is set.
    let best = best.expect("the target is consistent");
    Ok(WorstConsistent {
        error: dist.ratio(best),
        arcs: runs.into_arcs(index),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    #[serde(with = "crate::rational::json")]
    pub max_dev: Rational,
    pub argmax_arc: ShiftArc,
    /// Every maximal open arc of maximizers, `argmax_arc` first.
    pub argmax_arcs: Vec<ShiftArc>,
    #[serde(with = "crate::rational::json")]
    pub er_d_at_max: Rational,
    #[serde(with = "crate::rational::json")]
    pub er_s_at_max: Rational,
    pub band: Option<u32>,
    /// Both closures give the same supremum; the arcs are reported for this one.
    pub closure: Closure,
}

/// Whether mass `w / total` lies in `(2^-i, 2^-i+1]`.
#[inline]
pub fn in_band(w: u64, total: u64, i: u32) -> bool {
    if i == 0 || i > 64 {
        return false;
    }
    let w = w as u128;
    let t = total as u128;
    (w << i) > t && (w << (i - 1)) <= t
}

/// `sup_alpha er_D(h_alpha) - er_S(h_alpha)`, optionally over band `i` only.
pub fn sup_deviation(
    sample: &Sample,
    dist: &LabeledDist,
    band: Option<u32>,
) -> Result<DeviationReport> {
    let index = SweepIndex::new(dist)?;
    sup_deviation_bands(&index, sample, &[band])
        .pop()
        .expect("one request")
}

/// Several band restrictions evaluated in one sweep.
pub fn sup_deviation_bands(
    index: &SweepIndex<'_>,
    sample: &Sample,
    bands: &[Option<u32>],
) -> Vec<Result<DeviationReport>> {
    let n = sample.n();
    if n == 0 {
        return bands
            .iter()
            .map(|_| Err(Error::UndefinedEmpiricalError))
            .collect();
    }
    let total = index.dist().total_weight();
    let mut best: Vec<Option<(i128, ArcValue)>> = vec![None; bands.len()];
    let mut runs: Vec<ArgmaxRuns> = bands.iter().map(|_| ArgmaxRuns::new()).collect();
    let swept = index.for_each_arc(sample, |v| {
        let dev = v.wrong_weight as i128 * n as i128 - v.wrong_count as i128 * total as i128;
        for (b, band) in bands.iter().enumerate() {
            if let Some(i) = band {
                if !in_band(v.wrong_weight, total, *i) {
                    continue;
                }
            }
            match best[b] {
                Some((d, _)) if dev < d => {}
                Some((d, _)) if dev == d => runs[b].push(v.arc),
                _ => {
                    best[b] = Some((dev, v));
                    runs[b].reset(v.arc);
                }
            }
        }
    });
    if let Err(e) = swept {
        return bands
            .iter()
            .map(|_| Err(Error::InvalidInput(e.to_string())))
            .collect();
    }
    best.into_iter()
        .zip(runs)
        .zip(bands)
        .map(|((best, runs), band)| {
            let (dev, v) = best.ok_or(Error::EmptyBand(band.unwrap_or(0)))?;
            let arcs = runs.into_arcs(index);
            Ok(DeviationReport {
                max_dev: Rational::new(dev, n as i128 * total as i128),
                argmax_arc: arcs[0],
                argmax_arcs: arcs,
                er_d_at_max: index.dist().ratio(v.wrong_weight),
                er_s_at_max: Rational::new(v.wrong_count as i128, n as i128),
                band: *band,
                closure: Closure::LeftOpenRightClosed,
            })
        })
        .collect()
}
