use serde::{Deserialize, Serialize};

use crate::distributions::{LabeledDist, Sample};
use crate::error::{invalid, Result};
use crate::oracles2d::{ShiftArc, SweepIndex};
use crate::rational::{to_f64, Rational};

/// A planar hypothesis arc whose true error is above the audit threshold but
/// outside the factor-two sandwich around its empirical error.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditViolation {
    pub arc: ShiftArc,
    #[serde(with = "crate::rational::json")]
    pub er_d: Rational,
    #[serde(with = "crate::rational::json")]
    pub er_s: Rational,
}

/// Every arc with `er_D >= c (ln(1/delta) + d_eff ln(n/d_eff)) / n` that
/// violates `er_S / 2 <= er_D <= 2 er_S`.
pub fn lemma8_audit(
    sample: &Sample,
    dist: &LabeledDist,
    d_eff: u64,
    delta: Rational,
    c: Rational,
) -> Result<Vec<AuditViolation>> {
    if delta <= Rational::from_integer(0) || delta >= Rational::from_integer(1) {
        return invalid(format!("delta = {delta} outside (0, 1)"));
    }
    if d_eff == 0 {
        return invalid("d_eff must be positive");
    }
    let n = sample.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nf = n as f64;
    let threshold =
        to_f64(&c) * ((1.0 / to_f64(&delta)).ln() + d_eff as f64 * (nf / d_eff as f64).ln()) / nf;
    let index = SweepIndex::new(dist)?;
    let total = dist.total_weight() as u128;
    let mut out = Vec::new();
    index.for_each_arc(sample, |v| {
        let w = v.wrong_weight as u128;
        let s = v.wrong_count as u128;
        // er_D = w / total, er_S = s / n; compare by cross-multiplication.
        let er_d_f = w as f64 / total as f64;
        if er_d_f < threshold {
            return;
        }
        let d_scaled = w * n as u128;
        let s_scaled = s * total;
        let sandwich = s_scaled <= 2 * d_scaled && d_scaled <= 2 * s_scaled;
        if !sandwich {
            out.push(AuditViolation {
                arc: index.arc(v.arc),
                er_d: dist.ratio(v.wrong_weight),
                er_s: Rational::new(v.wrong_count as i128, n as i128),
            });
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{make_dist, LabeledAtom};
    use crate::geometry::{angle_from_turns, Semicircle};

    fn ten_atoms(heavy: i128) -> LabeledDist {
        let target = Semicircle::left_open(angle_from_turns(1, 20).unwrap());
        let atoms = (0..10)
            .map(|j| {
                let theta = angle_from_turns(j, 10).unwrap();
                let mass = if j == 0 {
                    Rational::new(heavy, 100)
                } else {
                    Rational::new(100 - heavy, 900)
                };
                LabeledAtom::at_angle(theta, target.classify(&theta), mass)
            })
            .collect();
        make_dist(atoms).unwrap()
    }

    #[test]
    fn proportional_sample_has_no_violations() {
        let dist = ten_atoms(10);
        let sample = Sample::from_counts(&dist, &[3; 10]).unwrap();
        let v = lemma8_audit(
            &sample,
            &dist,
            1,
            Rational::new(1, 10),
            Rational::new(1, 100),
        )
        .unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn single_draw_is_vacuous() {
        let dist = ten_atoms(10);
        let mut counts = [0; 10];
        counts[3] = 1;
        let sample = Sample::from_counts(&dist, &counts).unwrap();
        let v = lemma8_audit(
            &sample,
            &dist,
            1,
            Rational::new(1, 10),
            Rational::from_integer(4),
        )
        .unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn heavy_unseen_atom_violates_without_threshold() {
        // Atom 0 carries half the mass and is never drawn: every hypothesis
        // that errs on it has er_S far below er_D / 2.
        let dist = ten_atoms(50);
        let mut counts = [2; 10];
        counts[0] = 0;
        let sample = Sample::from_counts(&dist, &counts).unwrap();
        let v = lemma8_audit(
            &sample,
            &dist,
            1,
            Rational::new(1, 10),
            Rational::new(1, 100),
        )
        .unwrap();
        assert!(!v.is_empty());
        assert!(v.iter().all(|x| x.er_d >= Rational::new(1, 2)));
        // The default constant pushes the threshold above every error.
        let v = lemma8_audit(
            &sample,
            &dist,
            1,
            Rational::new(1, 10),
            Rational::from_integer(4),
        )
        .unwrap();
        assert!(v.is_empty());
    }
}
