use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::stats::{wilson_interval, RationalStats};
use crate::adversary::TrialOutcome;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frequency {
    pub count: u64,
    pub rate: f64,
    pub ci: (f64, f64),
}

impl Frequency {
    pub fn of(count: u64, total: u64) -> Result<Self> {
        Ok(Self {
            count,
            rate: count as f64 / total as f64,
            ci: wilson_interval(count, total, 0.95)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BandSummary {
    pub outcomes: u64,
    pub success: Frequency,
    pub deviation: RationalStats,
}

/// Aggregate of one run at one `n`. Built from the outcomes as a multiset,
/// so the order in which trials finished never matters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub experiment: String,
    pub n: u64,
    pub trials: u64,
    pub outcomes: u64,
    pub success: Frequency,
    pub er_d: RationalStats,
    pub er_s: RationalStats,
    pub deviation: RationalStats,
    /// Frequency of every flag that some outcome carries.
    pub flags: BTreeMap<String, Frequency>,
    pub bands: BTreeMap<u32, BandSummary>,
}

impl Summary {
    pub fn from_outcomes(
        experiment: &str,
        n: u64,
        trials: u64,
        outcomes: &[TrialOutcome],
    ) -> Result<Self> {
        let total = outcomes.len() as u64;
        if total == 0 {
            return Err(crate::error::Error::Config(
                "no outcomes to summarize".into(),
            ));
        }
        let successes = outcomes.iter().filter(|o| o.success).count() as u64;
        let pick = |f: fn(&TrialOutcome) -> crate::Rational, os: &[&TrialOutcome]| {
            RationalStats::of(&os.iter().map(|o| f(o)).collect::<Vec<_>>()).expect("nonempty")
        };
        let all: Vec<&TrialOutcome> = outcomes.iter().collect();

        let mut flag_counts: BTreeMap<String, u64> = BTreeMap::new();
        for o in outcomes {
            for (name, &v) in &o.flags {
                *flag_counts.entry(name.clone()).or_default() += v as u64;
            }
        }
        let flags = flag_counts
            .into_iter()
            .map(|(k, c)| Ok((k, Frequency::of(c, total)?)))
            .collect::<Result<_>>()?;

        let mut by_band: BTreeMap<u32, Vec<&TrialOutcome>> = BTreeMap::new();
        for o in outcomes {
            if let Some(b) = o.band {
                by_band.entry(b).or_default().push(o);
            }
        }
        let bands = by_band
            .into_iter()
            .map(|(b, os)| {
                let s = os.iter().filter(|o| o.success).count() as u64;
                Ok((
                    b,
                    BandSummary {
                        outcomes: os.len() as u64,
                        success: Frequency::of(s, os.len() as u64)?,
                        deviation: pick(|o| o.deviation, &os),
                    },
                ))
            })
            .collect::<Result<_>>()?;

        Ok(Self {
            experiment: experiment.to_string(),
            n,
            trials,
            outcomes: total,
            success: Frequency::of(successes, total)?,
            er_d: pick(|o| o.er_d, &all),
            er_s: pick(|o| o.er_s, &all),
            deviation: pick(|o| o.deviation, &all),
            flags,
            bands,
        })
    }
}
