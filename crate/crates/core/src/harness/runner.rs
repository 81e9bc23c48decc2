//! Seeded parallel execution of trial-based experiments.
//!
//! Trial `i` of a run uses seed `trial_seed(master, i)` and nothing else, so
//! a trial's outcome is independent of which worker ran it. Outcomes are
//! collected in index order and aggregated afterwards.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Experiment, ExperimentConfig};
use super::stats::{fit_rate, ModelComparison};
use super::summary::Summary;
use crate::adversary::{thm7_construct, Thm2Construction, Thm3Construction, TrialOutcome, Witness};
use crate::bounds::{bound_value, BoundKind, BoundParams};
use crate::distributions::rng::{counter_u64, trial_seed};
use crate::distributions::{sample_n, LabeledDist};
use crate::error::{Error, Result};
use crate::geometry::{angle_from_turns, Semicircle};
use crate::oracles2d::{sup_deviation_bands, SweepIndex, VersionSpaceIndex};
use crate::rational::{to_f64, Rational};

/// Outcomes and summary for one `n` of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunBlock {
    pub n: u64,
    pub outcomes: Vec<TrialOutcome>,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub blocks: Vec<RunBlock>,
    /// Fit of `n * mean(er_D)` against `ln n` when the grid has three or more
    /// sizes (realizable experiments only).
    pub fit: Option<ModelComparison>,
}

/// Denominator of the random target shift on planar experiments.
const TARGET_DEN: i128 = 1 << 30;

/// Left-open target semicircle drawn from the master seed.
pub fn experiment_target(master: u64) -> Result<Semicircle> {
    let num = counter_u64(master ^ 0x7461_7267_6574, 0) % TARGET_DEN as u64;
    Ok(Semicircle::left_open(angle_from_turns(
        num as i128,
        TARGET_DEN,
    )?))
}

fn map_trials<F>(config: &ExperimentConfig, f: F) -> Result<Vec<TrialOutcome>>
where
    F: Fn(u64) -> Result<Vec<TrialOutcome>> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", config.workers)))?;
    let per_trial: Vec<Result<Vec<TrialOutcome>>> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|i| f(trial_seed(config.seed, i)))
            .collect()
    });
    let mut out = Vec::with_capacity(config.trials as usize);
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}

/// A per-`n` setup, built before any trial runs so parameter problems
/// surface up front.
#[allow(clippy::large_enum_variant)]
enum Prepared {
    Homog {
        dist: LabeledDist,
        index: VersionSpaceIndex,
        bound: f64,
    },
    Inhom(Thm2Construction),
    Agnostic(Thm3Construction),
    Bandwise {
        dist: LabeledDist,
        bounds: Vec<f64>,
    },
    Dyadic(crate::adversary::DyadicConstruction),
}

fn prepare(config: &ExperimentConfig, n: u64) -> Result<Prepared> {
    let consts = &config.constants;
    let delta = to_f64(&config.delta);
    let as_config = |e: Error| match e {
        Error::ConstructionInfeasible(m) => Error::ConstructionInfeasible(m),
        other => Error::Config(other.to_string()),
    };
    let p = match config.experiment {
        Experiment::HomogRealizable => {
            let target = experiment_target(config.seed)?;
            let dist = LabeledDist::uniform_circle(config.default_atoms() as usize, &target)
                .map_err(as_config)?;
            let index = VersionSpaceIndex::new(&dist, &target).map_err(as_config)?;
            let bound = bound_value(
                BoundKind::Thm4Realizable,
                &BoundParams::new(n).delta(delta),
                consts,
            )
            .map_err(as_config)?;
            Prepared::Homog { dist, index, bound }
        }
        Experiment::InhomRealizable => {
            Prepared::Inhom(Thm2Construction::new(n, config.d, None, consts).map_err(as_config)?)
        }
        Experiment::AgnosticLb => {
            let tau = config
                .tau
                .ok_or_else(|| Error::Config("agnostic-lb needs --tau".into()))?;
            Prepared::Agnostic(Thm3Construction::new(n, config.d, tau, consts).map_err(as_config)?)
        }
        Experiment::Bandwise => {
            let target = experiment_target(config.seed)?;
            let dist = LabeledDist::uniform_circle(config.default_atoms() as usize, &target)
                .map_err(as_config)?;
            let bounds = config
                .bands
                .iter()
                .map(|&i| {
                    bound_value(
                        BoundKind::BandLogFree,
                        &BoundParams::new(n).delta(delta).band(i),
                        consts,
                    )
                })
                .collect::<Result<Vec<_>>>()
                .map_err(as_config)?;
            Prepared::Bandwise { dist, bounds }
        }
        Experiment::DyadicLb => {
            Prepared::Dyadic(thm7_construct(n, config.base, consts.thm7_c2).map_err(as_config)?)
        }
        Experiment::VerifyLemmas | Experiment::Bounds => {
            return Err(Error::Config(format!(
                "`{}` is not a trial-based experiment",
                config.experiment
            )))
        }
    };
    Ok(p)
}

fn run_prepared(
    config: &ExperimentConfig,
    n: u64,
    prepared: &Prepared,
) -> Result<Vec<TrialOutcome>> {
    let tag = config.experiment.tag();
    match prepared {
        Prepared::Homog { dist, index, bound } => map_trials(config, |seed| {
            let sample = sample_n(dist, n, seed);
            let worst = index.worst_consistent_error(&sample);
            let mut o = TrialOutcome::new(tag, seed, n, Some(2));
            o.consistent = true;
            o.set_errors(worst, Rational::from_integer(0));
            o.success = to_f64(&worst) <= *bound;
            Ok(vec![o])
        }),
        Prepared::Inhom(c) => map_trials(config, |seed| Ok(vec![c.trial(seed)?])),
        Prepared::Agnostic(c) => map_trials(config, |seed| Ok(vec![c.trial(seed)?])),
        Prepared::Bandwise { dist, bounds } => {
            let index = SweepIndex::new(dist)?;
            let requests: Vec<Option<u32>> = config.bands.iter().map(|&b| Some(b)).collect();
            map_trials(config, |seed| {
                let sample = sample_n(dist, n, seed);
                let reports = sup_deviation_bands(&index, &sample, &requests);
                reports
                    .into_iter()
                    .zip(bounds)
                    .map(|(r, &bound)| {
                        let r = r?;
                        let mut o = TrialOutcome::new(tag, seed, n, Some(2));
                        o.set_errors(r.er_d_at_max, r.er_s_at_max);
                        o.consistent = r.er_s_at_max == Rational::from_integer(0);
                        o.band = r.band;
                        o.success = to_f64(&r.max_dev) <= bound;
                        o.witness = Witness::Arcs {
                            arcs: r.argmax_arcs.iter().map(|a| (a.start, a.end)).collect(),
                            closure: r.closure,
                        };
                        Ok(o)
                    })
                    .collect()
            })
        }
        Prepared::Dyadic(c) => map_trials(config, |seed| {
            Ok(vec![c.trial(n, seed, &config.constants)?])
        }),
    }
}

/// Run every `n` of the grid.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunOutput> {
    config.validate()?;
    let mut blocks = Vec::with_capacity(config.n.len());
    for &n in &config.n {
        let prepared = prepare(config, n)?;
        let outcomes = run_prepared(config, n, &prepared)?;
        let summary = Summary::from_outcomes(config.experiment.tag(), n, config.trials, &outcomes)?;
        blocks.push(RunBlock {
            n,
            outcomes,
            summary,
        });
    }
    let fit = match config.experiment {
        Experiment::HomogRealizable | Experiment::InhomRealizable if blocks.len() >= 3 => {
            let points: Vec<(u64, f64)> =
                blocks.iter().map(|b| (b.n, b.summary.er_d.mean)).collect();
            Some(fit_rate(&points)?)
        }
        _ => None,
    };
    Ok(RunOutput { blocks, fit })
}

/// Run a single-`n` experiment and return its summary.
pub fn run_trials(config: &ExperimentConfig) -> Result<Summary> {
    if config.n.len() != 1 {
        return Err(Error::Config(
            "run_trials takes exactly one n; use run_experiment for grids".into(),
        ));
    }
    let mut out = run_experiment(config)?;
    Ok(out.blocks.pop().expect("one block").summary)
}
