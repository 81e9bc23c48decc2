//! Independent reference oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uclab::distributions::{
    empirical_error, make_dist, true_error, LabeledAtom, LabeledDist, Sample,
};
use uclab::geometry::{angle_from_turns, Angle, Closure, Label, Semicircle};
use uclab::Rational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random planar distribution: up to `max_atoms` atoms on a random grid,
/// random integer weights, labels from `target` or uniformly random.
pub fn random_dist(
    r: &mut ChaCha8Rng,
    max_atoms: usize,
    target: Option<&Semicircle>,
) -> LabeledDist {
    let grids = [4i128, 6, 8, 12, 16, 24, 36, 60, 64, 360];
    let grid = grids[r.random_range(0..grids.len())];
    let m = r.random_range(1..=max_atoms);
    let weights: Vec<i128> = (0..m).map(|_| r.random_range(1..=5)).collect();
    let total: i128 = weights.iter().sum();
    let atoms = weights
        .iter()
        .map(|&w| {
            let theta = angle_from_turns(r.random_range(0..grid), grid).unwrap();
            let label = match target {
                Some(t) => t.classify(&theta),
                None => Label::from_sign(r.random_bool(0.5)),
            };
            LabeledAtom::at_angle(theta, label, Rational::new(w, total))
        })
        .collect();
    make_dist(atoms).unwrap()
}

pub fn random_sample(r: &mut ChaCha8Rng, dist: &LabeledDist, max_draws: u64) -> Sample {
    let n = r.random_range(1..=max_draws);
    let mut counts = vec![0u64; dist.len()];
    for _ in 0..n {
        counts[r.random_range(0..dist.len())] += 1;
    }
    Sample::from_counts(dist, &counts).unwrap()
}

pub fn random_target(r: &mut ChaCha8Rng, closure: Closure) -> Semicircle {
    let den = [4i128, 8, 12, 24, 72, 1000][r.random_range(0..6)];
    Semicircle::new(
        angle_from_turns(r.random_range(0..den), den).unwrap(),
        closure,
    )
}

/// Every event point and every midpoint between consecutive events, as exact angles.
pub fn candidate_shifts(dist: &LabeledDist) -> Vec<Angle> {
    let mut ev: Vec<Angle> = Vec::new();
    for i in 0..dist.len() {
        let a = dist.angle(i).unwrap();
        ev.push(a);
        ev.push(a.add_half_turn());
    }
    ev.sort();
    ev.dedup();
    let mut out = ev.clone();
    for j in 0..ev.len() {
        let next = ev[(j + 1) % ev.len()];
        out.push(ev[j].arc_midpoint(&next));
    }
    out
}

/// Brute-force sup of `er_D - er_S` over every candidate shift and both closures.
pub fn brute_sup_deviation(
    dist: &LabeledDist,
    sample: &Sample,
    band: Option<u32>,
) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for alpha in candidate_shifts(dist) {
        for closure in [Closure::LeftOpenRightClosed, Closure::LeftClosedRightOpen] {
            let h = Semicircle::new(alpha, closure);
            let d = true_error(dist, &h).unwrap();
            if let Some(i) = band {
                let lo = Rational::new(1, 1i128 << i);
                if !(d > lo && d <= lo * 2) {
                    continue;
                }
            }
            let dev = d - empirical_error(sample, dist, &h).unwrap();
            if best.is_none_or(|b| dev > b) {
                best = Some(dev);
            }
        }
    }
    best
}

/// Brute-force worst true error among consistent shifts with the given closure.
pub fn brute_worst_consistent(dist: &LabeledDist, sample: &Sample, closure: Closure) -> Rational {
    let mut best = Rational::from_integer(0);
    for alpha in candidate_shifts(dist) {
        let h = Semicircle::new(alpha, closure);
        if empirical_error(sample, dist, &h).unwrap() == Rational::from_integer(0) {
            best = best.max(true_error(dist, &h).unwrap());
        }
    }
    best
}
