//! Exact oracles over homogeneous halfspaces in the plane.

mod critical;
mod sweep;
mod version_space;

pub use critical::{critical_radii, g_wedge_mass, h_wedge_mass, CriticalRadii};
pub use sweep::{
    in_band, sup_deviation, sup_deviation_bands, worst_consistent_error, worst_consistent_with,
    ArcValue, DeviationReport, ShiftArc, SweepIndex, WorstConsistent,
};
pub use version_space::VersionSpaceIndex;

/// Radius used to localize band `i`: `2^(3 - i)`, clamped to one.
pub fn band_epsilon(i: u32) -> crate::rational::Rational {
    use crate::rational::Rational;
    if i <= 3 {
        Rational::from_integer(1)
    } else {
        Rational::new(1, 1i128 << (i - 3))
    }
}
