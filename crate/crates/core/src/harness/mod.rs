//! Running experiments and reporting their results.

mod config;
mod lemmas;
mod output;
mod runner;
mod stats;
mod summary;

pub use config::{parse_list, Experiment, ExperimentConfig, OutputFormat};
pub use lemmas::{verify_lemmas, GridTally, LemmaReport, RC_P};
pub use output::{csv_row, summary_sidecar, write_csv, write_jsonl, write_run, CSV_HEADER};
pub use runner::{experiment_target, run_experiment, run_trials, RunBlock, RunOutput};
pub use stats::{
    exact_mean, fit_rate, nearest_rank, spearman, wilson_half_width, wilson_interval,
    ModelComparison, RankCorrelation, RationalStats, Z95,
};
pub use summary::{BandSummary, Frequency, Summary};
