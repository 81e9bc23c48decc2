//! The block-structured support on which any labelling with at most one
//! negative per block is realised by an inhomogeneous halfspace.
//!
//! Block `i` (0-based) occupies ambient coordinates `2i` and `2i + 1` and
//! holds `k` unit vectors at angles `j / k` of a turn, `j = 0..k`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{angle_from_turns, sign, Angle, InhomHalfspace, Label};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub block: usize,
    pub index: usize,
    /// Exact in-block angle `index / k` of a turn.
    pub angle: Angle,
    /// `(cos, sin)` of the in-block angle.
    pub unit: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredSupport {
    d: usize,
    k: usize,
    points: Vec<SupportPoint>,
}

pub fn build_support(d: usize, k: usize) -> Result<StructuredSupport> {
    StructuredSupport::new(d, k)
}

impl StructuredSupport {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        if d < 2 || !d.is_multiple_of(2) {
            return invalid(format!("dimension must be even and >= 2, got {d}"));
        }
        if k < 2 {
            return invalid(format!("block size must be >= 2, got {k}"));
        }
        let unit: Vec<(f64, f64)> = (0..k)
            .map(|j| {
                let phi = TAU * j as f64 / k as f64;
                (phi.cos(), phi.sin())
            })
            .collect();
        let mut points = Vec::with_capacity(d / 2 * k);
        for block in 0..d / 2 {
            for (index, &u) in unit.iter().enumerate() {
                points.push(SupportPoint {
                    block,
                    index,
                    angle: angle_from_turns(index as i128, k as i128)?,
                    unit: u,
                });
            }
        }
        Ok(Self { d, k, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> usize {
        self.d / 2
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SupportPoint] {
        &self.points
    }

    pub fn flat_index(&self, block: usize, index: usize) -> usize {
        block * self.k + index
    }

    pub fn point(&self, block: usize, index: usize) -> &SupportPoint {
        &self.points[self.flat_index(block, index)]
    }

    /// Ambient coordinates of point `idx` (zeros outside its block's slots).
    pub fn ambient(&self, idx: usize) -> Vec<f64> {
        let p = &self.points[idx];
        let mut x = vec![0.0; self.d];
        x[2 * p.block] = p.unit.0;
        x[2 * p.block + 1] = p.unit.1;
        x
    }

    /// `w.x + b` at point `idx` without materialising the ambient vector.
    #[inline]
    pub fn evaluate(&self, h: &InhomHalfspace, idx: usize) -> Result<f64> {
        if h.dim() != self.d {
            return invalid(format!(
                "halfspace has dimension {} but the support lives in R^{}",
                h.dim(),
                self.d
            ));
        }
        let p = &self.points[idx];
        Ok(h.w[2 * p.block] * p.unit.0 + h.w[2 * p.block + 1] * p.unit.1 + h.b)
    }

    pub fn classify(&self, h: &InhomHalfspace, idx: usize) -> Result<Label> {
        Ok(sign(self.evaluate(h, idx)?))
    }

    /// Bias used by [`realize_labeling`]: `cos(pi / (4k))`.
    pub fn realizing_bias(&self) -> f64 {
        (PI / (4.0 * self.k as f64)).cos()
    }

    /// Lower bound on `w.x + b` for the positive points of a block that holds
    /// a negative: `cos(pi/(4k)) - cos(2pi/k)`.
    pub fn neighbour_margin(&self) -> f64 {
        self.realizing_bias() - (TAU / self.k as f64).cos()
    }
}

/// A labelling of a [`StructuredSupport`] with at most one `-1` per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockLabeling {
    k: usize,
    neg: Vec<Option<usize>>,
}

impl BlockLabeling {
    pub fn new(support: &StructuredSupport, neg: Vec<Option<usize>>) -> Result<Self> {
        if neg.len() != support.blocks() {
            return invalid(format!(
                "labelling covers {} blocks but the support has {}",
                neg.len(),
                support.blocks()
            ));
        }
        if let Some(j) = neg.iter().flatten().find(|&&j| j >= support.k()) {
            return invalid(format!(
                "negative index {j} is outside block size {}",
                support.k()
            ));
        }
        Ok(Self {
            k: support.k(),
            neg,
        })
    }

    pub fn all_positive(support: &StructuredSupport) -> Self {
        Self {
            k: support.k(),
            neg: vec![None; support.blocks()],
        }
    }

    pub fn negatives(&self) -> &[Option<usize>] {
        &self.neg
    }

    pub fn negative_count(&self) -> usize {
        self.neg.iter().flatten().count()
    }

    pub fn label(&self, block: usize, index: usize) -> Label {
        if self.neg[block] == Some(index) {
            Label::Neg
        } else {
            Label::Pos
        }
    }

    fn compatible(&self, support: &StructuredSupport) -> bool {
        self.k == support.k() && self.neg.len() == support.blocks()
    }
}

/// The halfspace `(w_y, cos(pi/(4k)))`: for a block whose negative sits at
/// `j`, the block's two weights are `-(cos 2pi j/k, sin 2pi j/k)`; blocks
/// without a negative get zero weights.
pub fn realize_labeling(support: &StructuredSupport, y: &BlockLabeling) -> Result<InhomHalfspace> {
    if !y.compatible(support) {
        return invalid("labelling was built for a different support");
    }
    let mut w = vec![0.0; support.d()];
    for (block, neg) in y.negatives().iter().enumerate() {
        if let Some(j) = *neg {
            let (c, s) = support.point(block, j).unit;
            w[2 * block] = -c;
            w[2 * block + 1] = -s;
        }
    }
    Ok(InhomHalfspace::new(w, support.realizing_bias()))
}
