//! The exhaustive lemma grids.

use serde::{Deserialize, Serialize};

use crate::bounds::{
    delta_schedule, paley_zygmund_check, reverse_chernoff_check, reverse_chernoff_grid,
    PaleyZygmund, ReverseChernoff,
};
use crate::error::Result;
use crate::rational::Rational;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GridTally {
    pub checked: u64,
    pub failures: u64,
    /// Grid cells with no admissible parameter (reported, not checked).
    pub skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub reverse_chernoff: GridTally,
    pub paley_zygmund: GridTally,
    pub delta_schedule: GridTally,
    pub reverse_chernoff_failures: Vec<ReverseChernoff>,
    pub paley_zygmund_failures: Vec<PaleyZygmund>,
    pub all_hold: bool,
}

/// `n` in `2^4..=2^12`, `p` in `{1/64, 1/16, 1/4, 1/2}`.
pub const RC_P: [(i128, i128); 4] = [(1, 64), (1, 16), (1, 4), (1, 2)];

pub fn verify_lemmas() -> Result<LemmaReport> {
    let mut rc = GridTally::default();
    let mut rc_fail = Vec::new();
    for e in 4..=12 {
        let n = 1u64 << e;
        for &(a, b) in &RC_P {
            let p = Rational::new(a, b);
            let grid = reverse_chernoff_grid(n, &p);
            if grid.is_empty() {
                rc.skipped += 1;
                continue;
            }
            for delta in grid {
                let r = reverse_chernoff_check(n, p, delta)?;
                rc.checked += 1;
                if !(r.valid && r.holds) {
                    rc.failures += 1;
                    rc_fail.push(r);
                }
            }
        }
    }

    let mut pz = GridTally::default();
    let mut pz_fail = Vec::new();
    for n in 1..=200u64 {
        for j in 0..=20 {
            let r = paley_zygmund_check(n, Rational::new(j, 40))?;
            pz.checked += 1;
            if !r.holds {
                pz.failures += 1;
                pz_fail.push(r);
            }
        }
    }

    let mut ds = GridTally::default();
    for m in 1..=64 {
        for delta in [
            Rational::new(1, 2),
            Rational::new(1, 10),
            Rational::new(1, 100),
        ] {
            let s = delta_schedule(m, delta)?;
            ds.checked += 1;
            let telescoped = Rational::from_integer(1) - Rational::new(1, m as i128 + 1);
            let weights: Rational = (1..=m as i128).map(|i| Rational::new(1, i * (i + 1))).sum();
            if s.total() != delta || weights != telescoped {
                ds.failures += 1;
            }
        }
    }

    let all_hold = rc.failures == 0 && pz.failures == 0 && ds.failures == 0;
    Ok(LemmaReport {
        reverse_chernoff: rc,
        paley_zygmund: pz,
        delta_schedule: ds,
        reverse_chernoff_failures: rc_fail,
        paley_zygmund_failures: pz_fail,
        all_hold,
    })
}
