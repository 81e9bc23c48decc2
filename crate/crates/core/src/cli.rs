//! Command-line front end.
//!
//! `uclab <experiment> [flags]`. Trial-based experiments write JSON lines
//! (or CSV plus a summary sidecar) to `--out`, or JSON lines to stdout when
//! no path is given. `verify-lemmas` and `bounds` print a single JSON object.

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use serde::Serialize;

use crate::bounds::{bound_value, BoundKind, BoundParams};
use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::harness::{
    parse_list, run_experiment, verify_lemmas, write_jsonl, write_run, Experiment,
    ExperimentConfig, OutputFormat,
};
use crate::rational::{parse_rational, to_f64};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "uclab",
    version,
    about = "Uniform-convergence experiments for halfspaces"
)]
pub struct Cli {
    /// homog-realizable | inhom-realizable | agnostic-lb | bandwise | dyadic-lb | verify-lemmas | bounds
    pub experiment: String,
    /// Sample size or strictly increasing comma-separated grid.
    #[arg(long, default_value = "1024")]
    pub n: String,
    #[arg(long, default_value_t = 2)]
    pub d: u64,
    /// Target empirical error `p/q` for agnostic-lb.
    #[arg(long)]
    pub tau: Option<String>,
    /// Band index or comma-separated list.
    #[arg(long, default_value = "4")]
    pub band: String,
    #[arg(long = "B", default_value_t = 4)]
    pub base: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Constant override `name=value`; repeatable.
    #[arg(long = "const")]
    pub constants: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    pub format: String,
    /// Atoms on the uniform circle (planar experiments).
    #[arg(long)]
    pub atoms: Option<u64>,
    /// Confidence parameter `p/q`.
    #[arg(long, default_value = "1/20")]
    pub delta: String,
    /// Bound kind for `bounds`; all kinds when omitted.
    #[arg(long)]
    pub kind: Option<String>,
    /// Empirical error for bounds that take one.
    #[arg(long = "er-s")]
    pub er_s: Option<String>,
}

fn to_config_err(e: Error) -> Error {
    match e {
        Error::Config(_) | Error::ConstructionInfeasible(_) => e,
        other => Error::Config(other.to_string()),
    }
}

impl Cli {
    pub fn config(&self) -> Result<ExperimentConfig> {
        let experiment: Experiment = self.experiment.parse()?;
        let constants = Constants::default()
            .with_overrides(&self.constants)
            .map_err(to_config_err)?;
        let mut cfg = ExperimentConfig::new(experiment)
            .with_n(&parse_list::<u64>(&self.n)?)
            .with_d(self.d)
            .with_bands(&parse_list::<u32>(&self.band)?)
            .with_trials(self.trials)
            .with_seed(self.seed)
            .with_workers(self.workers);
        if let Some(t) = &self.tau {
            cfg = cfg.with_tau(parse_rational(t).map_err(to_config_err)?);
        }
        if let Some(a) = self.atoms {
            cfg = cfg.with_atoms(a);
        }
        cfg.base = self.base;
        cfg.delta = parse_rational(&self.delta).map_err(to_config_err)?;
        cfg.constants = constants;
        cfg.out = self.out.clone();
        cfg.format = self.format.parse::<OutputFormat>()?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Serialize)]
struct BoundReport {
    kind: &'static str,
    params: BoundParams,
    value: Option<f64>,
    error: Option<String>,
}

fn bounds_report(cli: &Cli, cfg: &ExperimentConfig) -> Result<Vec<BoundReport>> {
    let kinds = match &cli.kind {
        Some(k) => vec![k.parse::<BoundKind>().map_err(to_config_err)?],
        None => BoundKind::ALL.to_vec(),
    };
    let mut params = BoundParams::new(cfg.n[0])
        .delta(to_f64(&cfg.delta))
        .d(cfg.d)
        .band(cfg.bands[0]);
    if let Some(e) = &cli.er_s {
        params = params.er_s(to_f64(&parse_rational(e).map_err(to_config_err)?));
    }
    let single = cli.kind.is_some();
    kinds
        .into_iter()
        .map(|kind| match bound_value(kind, &params, &cfg.constants) {
            Ok(v) => Ok(BoundReport {
                kind: kind.name(),
                params: params.clone(),
                value: Some(v),
                error: None,
            }),
            Err(e) if single => Err(to_config_err(e)),
            Err(e) => Ok(BoundReport {
                kind: kind.name(),
                params: params.clone(),
                value: None,
                error: Some(e.to_string()),
            }),
        })
        .collect()
}

fn emit_json<T: Serialize>(value: &T, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Execute a parsed command; returns the process exit code.
pub fn execute(cli: &Cli) -> Result<i32> {
    let cfg = cli.config()?;
    match cfg.experiment {
        Experiment::VerifyLemmas => {
            let report = verify_lemmas()?;
            emit_json(&report, cfg.out.as_ref())?;
            Ok(if report.all_hold {
                EXIT_OK
            } else {
                EXIT_FAILURE
            })
        }
        Experiment::Bounds => {
            emit_json(&bounds_report(cli, &cfg)?, cfg.out.as_ref())?;
            Ok(EXIT_OK)
        }
        _ => {
            let run = run_experiment(&cfg)?;
            match &cfg.out {
                Some(path) => {
                    for p in write_run(&run, path, cfg.format)? {
                        eprintln!("wrote {}", p.display());
                    }
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    write_jsonl(&run, &mut lock)?;
                    lock.flush()?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        Error::ConstructionInfeasible(_) => EXIT_INFEASIBLE,
        _ => EXIT_FAILURE,
    }
}

/// Parse `args` and run; errors are reported on stderr.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("uclab: {e}");
            exit_code(&e)
        }
    }
}
