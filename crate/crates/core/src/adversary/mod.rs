//! Seeded, deterministic versions of the lower-bound constructions and the
//! within-constants audit.
//!
//! Each construction is prepared once per parameter set (support,
//! distribution, derived constants) and then evaluated per seed, so the
//! harness can run many trials against one shared, immutable setup.

mod audit;
mod outcome;
mod thm2;
mod thm3;
mod thm7;

pub use audit::{lemma8_audit, AuditViolation};
pub use outcome::{TrialOutcome, Witness};
pub use thm2::{thm2_params, thm2_trial, Thm2Construction};
pub use thm3::{thm3_params, thm3_trial, Thm3Construction, Thm3Params};
pub use thm7::{thm7_construct, thm7_trial, DyadicConstruction};

use std::sync::Arc;

use crate::distributions::{sample_n, LabeledDist, Sample};
use crate::error::Result;
use crate::geometry::{
    build_support, realize_labeling, BlockLabeling, InhomHalfspace, StructuredSupport,
};

/// Uniform distribution on the structured support labelled by the
/// all-positive target `(0, cos(pi/(4k)))`.
fn all_positive_setup(
    d: usize,
    k: usize,
) -> Result<(Arc<StructuredSupport>, InhomHalfspace, LabeledDist)> {
    let support = Arc::new(build_support(d, k)?);
    let target = realize_labeling(&support, &BlockLabeling::all_positive(&support))?;
    let dist = LabeledDist::uniform_structured(support.clone(), &target)?;
    Ok((support, target, dist))
}

fn draw(dist: &LabeledDist, n: u64, seed: u64) -> Sample {
    sample_n(dist, n, seed)
}
