use std::ops::Neg;

use serde::{Deserialize, Serialize};

use super::Angle;

/// Binary label in `{-1, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    pub fn value(self) -> i8 {
        match self {
            Label::Neg => -1,
            Label::Pos => 1,
        }
    }

    pub fn from_sign(positive: bool) -> Label {
        if positive {
            Label::Pos
        } else {
            Label::Neg
        }
    }
}

impl Neg for Label {
    type Output = Label;
    fn neg(self) -> Label {
        match self {
            Label::Neg => Label::Pos,
            Label::Pos => Label::Neg,
        }
    }
}

impl TryFrom<i8> for Label {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            -1 => Ok(Label::Neg),
            1 => Ok(Label::Pos),
            other => Err(format!("label must be -1 or 1, got {other}")),
        }
    }
}

impl From<Label> for i8 {
    fn from(l: Label) -> i8 {
        l.value()
    }
}

/// Which endpoint of the positive arc is included.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// Positive exactly on `(alpha, alpha + half turn]`.
    #[default]
    LeftOpenRightClosed,
    /// Positive exactly on `[alpha, alpha + half turn)`.
    LeftClosedRightOpen,
}

/// A homogeneous halfspace in the plane, seen as the semicircle of directions
/// it labels `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Semicircle {
    pub alpha: Angle,
    #[serde(default)]
    pub closure: Closure,
}

impl Semicircle {
    pub fn new(alpha: Angle, closure: Closure) -> Self {
        Self { alpha, closure }
    }

    /// `I_alpha = (alpha, alpha + pi]`.
    pub fn left_open(alpha: Angle) -> Self {
        Self::new(alpha, Closure::LeftOpenRightClosed)
    }

    /// `[alpha, alpha + pi)`.
    pub fn left_closed(alpha: Angle) -> Self {
        Self::new(alpha, Closure::LeftClosedRightOpen)
    }

    #[inline]
    pub fn classify(&self, theta: &Angle) -> Label {
        let (x, d) = theta.offset_from(&self.alpha);
        let positive = match self.closure {
            Closure::LeftOpenRightClosed => x > 0 && 2 * x <= d,
            Closure::LeftClosedRightOpen => 2 * x < d,
        };
        Label::from_sign(positive)
    }

    /// The semicircle labelling every direction the opposite way.
    pub fn complement(&self) -> Semicircle {
        Semicircle::new(self.alpha.add_half_turn(), self.closure)
    }
}

pub fn semicircle_classify(s: &Semicircle, theta: &Angle) -> Label {
    s.classify(theta)
}
