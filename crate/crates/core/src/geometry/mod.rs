//! Exact angles, semicircle hypotheses, disagreement wedges, general
//! halfspaces and the block-structured support.

mod angle;
mod halfspace;
mod semicircle;
mod support;
mod wedge;

pub use angle::{angle_from_turns, Angle, MAX_DEN};
pub use halfspace::{halfspace_classify, sign, InhomHalfspace};
pub use semicircle::{semicircle_classify, Closure, Label, Semicircle};
pub use support::{
    build_support, realize_labeling, BlockLabeling, StructuredSupport, SupportPoint,
};
pub use wedge::{g_coordinate, h_coordinate, wedge_contains, Openness, WedgeKind, WedgeSpec};
