//! Symmetric disagreement wedges around the boundary of `I_0 = (0, pi]`.
//!
//! `G_t = (0, t] ∪ (pi, pi + t]` is where `I_t` disagrees with `I_0`, and
//! `H_t = (pi - t, pi] ∪ (2pi - t, 2pi]` is where `I_{-t}` does. Both are
//! nested in `t`. Membership reduces to comparing a per-direction "wedge
//! coordinate" against `t`.

use serde::{Deserialize, Serialize};

use super::Angle;
use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WedgeKind {
    G,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Openness {
    /// `G_t` / `H_t`.
    HalfOpen,
    /// `G°_t` / `H°_t`: both endpoints of each arc excluded.
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WedgeSpec {
    pub kind: WedgeKind,
    pub t: Angle,
    pub openness: Openness,
}

impl WedgeSpec {
    pub fn new(kind: WedgeKind, t: Angle, openness: Openness) -> Result<Self> {
        if t.is_zero() || t > Angle::HALF_TURN {
            return invalid(format!("wedge radius {t} must lie in (0, 1/2] turn"));
        }
        Ok(Self { kind, t, openness })
    }

    pub fn contains(&self, theta: &Angle) -> bool {
        match (self.kind, self.openness) {
            (WedgeKind::G, Openness::HalfOpen) => g_coordinate(theta) <= self.t,
            (WedgeKind::G, Openness::Open) => g_coordinate(theta) < self.t,
            (WedgeKind::H, Openness::HalfOpen) => h_coordinate(theta) < self.t,
            (WedgeKind::H, Openness::Open) => {
                let c = h_coordinate(theta);
                !c.is_zero() && c < self.t
            }
        }
    }
}

pub fn wedge_contains(w: &WedgeSpec, theta: &Angle) -> bool {
    w.contains(theta)
}

/// Smallest radius `t in (0, 1/2]` with `theta in G_t`. Directions `0` and
/// `pi` only enter at `t = pi`, where `G_pi` is the whole circle.
pub fn g_coordinate(theta: &Angle) -> Angle {
    if theta.is_zero() {
        Angle::HALF_TURN
    } else if *theta <= Angle::HALF_TURN {
        *theta
    } else {
        theta.checked_sub(&Angle::HALF_TURN).expect("in range")
    }
}

/// Coordinate `c in [0, 1/2)` with `theta in H_t` iff `c < t`.
pub fn h_coordinate(theta: &Angle) -> Angle {
    if theta.is_zero() {
        Angle::ZERO
    } else if *theta <= Angle::HALF_TURN {
        Angle::HALF_TURN.checked_sub(theta).expect("in range")
    } else {
        Angle::ZERO.checked_sub(theta).expect("in range")
    }
}
