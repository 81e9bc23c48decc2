//! Finite labelled distributions with exact masses, reproducible sampling
//! and exact error evaluation.

mod dist;
mod io;
pub mod rng;
mod sample;

pub use dist::{
    label_by_target, make_dist, make_structured_dist, true_error, Classifier, DistMode,
    LabeledAtom, LabeledDist, Location, MAX_TOTAL_WEIGHT,
};
pub use io::{load_dist, save_dist, AtomRecord, DistFile, FileMode, SCHEMA_VERSION};
pub use sample::{empirical_error, empirical_mistakes, sample_n, Sample};
