use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    HomogRealizable,
    InhomRealizable,
    AgnosticLb,
    Bandwise,
    DyadicLb,
    VerifyLemmas,
    Bounds,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::HomogRealizable,
        Experiment::InhomRealizable,
        Experiment::AgnosticLb,
        Experiment::Bandwise,
        Experiment::DyadicLb,
        Experiment::VerifyLemmas,
        Experiment::Bounds,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Experiment::HomogRealizable => "homog-realizable",
            Experiment::InhomRealizable => "inhom-realizable",
            Experiment::AgnosticLb => "agnostic-lb",
            Experiment::Bandwise => "bandwise",
            Experiment::DyadicLb => "dyadic-lb",
            Experiment::VerifyLemmas => "verify-lemmas",
            Experiment::Bounds => "bounds",
        }
    }

    /// Whether the experiment is a seeded Monte Carlo run.
    pub fn is_trial_based(self) -> bool {
        !matches!(self, Experiment::VerifyLemmas | Experiment::Bounds)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.tag() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!(
                "unknown format `{other}` (json or csv)"
            ))),
        }
    }
}

/// Everything a run depends on. `workers`, `out` and `format` affect only
/// how the run executes and where it is written, never its content.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Sample sizes, strictly increasing.
    pub n: Vec<u64>,
    pub d: u64,
    #[serde(with = "crate::rational::json_opt")]
    pub tau: Option<Rational>,
    /// Band indices for the bandwise experiment.
    pub bands: Vec<u32>,
    /// Base `B` of the dyadic construction.
    pub base: u64,
    pub trials: u64,
    pub seed: u64,
    /// Atoms on the uniform circle for the planar experiments; defaults to
    /// 2^16 (realizable) or 2^12 (bandwise).
    pub atoms: Option<u64>,
    /// Confidence parameter of the success predicates that need one.
    #[serde(with = "crate::rational::json")]
    pub delta: Rational,
    pub constants: Constants,
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            n: vec![1024],
            d: 2,
            tau: None,
            bands: vec![4],
            base: 4,
            trials: 100,
            seed: 0,
            atoms: None,
            delta: Rational::new(1, 20),
            constants: Constants::default(),
            workers: 1,
            out: None,
            format: OutputFormat::Json,
        }
    }

    pub fn with_n(mut self, n: &[u64]) -> Self {
        self.n = n.to_vec();
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_d(mut self, d: u64) -> Self {
        self.d = d;
        self
    }

    pub fn with_tau(mut self, tau: Rational) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn with_bands(mut self, bands: &[u32]) -> Self {
        self.bands = bands.to_vec();
        self
    }

    pub fn with_atoms(mut self, atoms: u64) -> Self {
        self.atoms = Some(atoms);
        self
    }

    pub fn default_atoms(&self) -> u64 {
        self.atoms.unwrap_or(match self.experiment {
            Experiment::Bandwise => 1 << 12,
            _ => 1 << 16,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.trials < 1 && self.experiment.is_trial_based() {
            return fail("trials must be at least 1".into());
        }
        if self.n.is_empty() {
            return fail("at least one n is required".into());
        }
        if self.n.windows(2).any(|w| w[0] >= w[1]) {
            return fail("the n grid must be strictly increasing".into());
        }
        if self.n[0] == 0 {
            return fail("n must be positive".into());
        }
        if self.workers == 0 {
            return fail("workers must be at least 1".into());
        }
        if self.delta <= Rational::from_integer(0) || self.delta >= Rational::from_integer(1) {
            return fail(format!("delta = {} outside (0, 1)", self.delta));
        }
        match self.experiment {
            Experiment::AgnosticLb if self.tau.is_none() => fail("agnostic-lb needs --tau".into()),
            Experiment::Bandwise if self.bands.is_empty() || self.bands.contains(&0) => {
                fail("bandwise needs band indices >= 1".into())
            }
            Experiment::HomogRealizable | Experiment::Bandwise if self.default_atoms() < 2 => {
                fail("the circle needs at least two atoms".into())
            }
            _ => Ok(()),
        }
    }
}

/// Parse `a,b,c` into a list.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|_| Error::Config(format!("cannot parse `{p}` in `{s}`")))
        })
        .collect()
}
