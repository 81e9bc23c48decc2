use serde::{Deserialize, Serialize};

use super::Label;
use crate::error::{invalid, Result};

/// A general halfspace `x -> sign(w.x + b)` in `R^d`, with `sign(0) = +1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InhomHalfspace {
    pub w: Vec<f64>,
    pub b: f64,
}

impl InhomHalfspace {
    pub fn new(w: Vec<f64>, b: f64) -> Self {
        Self { w, b }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.b == 0.0
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.w.len() {
            return invalid(format!(
                "point has dimension {} but the halfspace has dimension {}",
                x.len(),
                self.w.len()
            ));
        }
        Ok(self.w.iter().zip(x).map(|(w, x)| w * x).sum::<f64>() + self.b)
    }

    pub fn classify(&self, x: &[f64]) -> Result<Label> {
        Ok(sign(self.value(x)?))
    }
}

#[inline]
pub fn sign(v: f64) -> Label {
    Label::from_sign(v >= 0.0)
}

pub fn halfspace_classify(h: &InhomHalfspace, x: &[f64]) -> Result<Label> {
    h.classify(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let h = InhomHalfspace::new(vec![1.0, 0.0], 0.0);
        assert_eq!(h.classify(&[2.0, 5.0]).unwrap(), Label::Pos);
        assert!(h.is_homogeneous());
        let h = InhomHalfspace::new(vec![0.0, 0.0], 0.5);
        assert_eq!(h.classify(&[-7.0, 3.0]).unwrap(), Label::Pos);
        let h = InhomHalfspace::new(vec![1.0, 0.0], -1.0);
        assert_eq!(h.classify(&[1.0, 0.0]).unwrap(), Label::Pos);
        assert_eq!(h.classify(&[0.5, 0.0]).unwrap(), Label::Neg);
    }

    #[test]
    fn dimension_mismatch() {
        let h = InhomHalfspace::new(vec![1.0, 0.0], 0.0);
        assert!(h.classify(&[1.0]).is_err());
    }
}
