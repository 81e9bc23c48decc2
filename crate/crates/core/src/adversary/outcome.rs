use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::geometry::{Angle, Closure};
use crate::rational::Rational;

/// The hypothesis a trial reports on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A planar semicircle.
    Semicircle { alpha: Angle, closure: Closure },
    /// `realize_labeling` of a block labelling: the negative index per block.
    Halfspace {
        k: usize,
        negatives: Vec<Option<usize>>,
    },
    /// A set of planar shifts, each an arc `[start, end)` of equal value.
    Arcs {
        arcs: Vec<(Angle, Angle)>,
        closure: Closure,
    },
    /// No hypothesis was produced.
    None,
}

/// Outcome of one seeded trial of a construction.
///
/// `deviation` is always `er_d - er_s`; `success` is the construction's own
/// predicate. `flags` carries secondary events by name and `extras` the
/// derived quantities (`k`, `t`, `mu_i`, block counts, ...).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub n: u64,
    pub d: Option<u64>,
    pub tag: String,
    pub consistent: bool,
    #[serde(with = "crate::rational::json")]
    pub er_d: Rational,
    #[serde(with = "crate::rational::json")]
    pub er_s: Rational,
    #[serde(with = "crate::rational::json")]
    pub deviation: Rational,
    pub witness: Witness,
    pub success: bool,
    pub band: Option<u32>,
    pub flags: BTreeMap<String, bool>,
    #[serde(with = "crate::rational::json_map")]
    pub extras: BTreeMap<String, Rational>,
}

impl TrialOutcome {
    pub(crate) fn new(tag: &str, seed: u64, n: u64, d: Option<u64>) -> Self {
        let zero = Rational::from_integer(0);
        Self {
            seed,
            n,
            d,
            tag: tag.to_string(),
            consistent: false,
            er_d: zero,
            er_s: zero,
            deviation: zero,
            witness: Witness::None,
            success: false,
            band: None,
            flags: BTreeMap::new(),
            extras: BTreeMap::new(),
        }
    }

    pub(crate) fn set_errors(&mut self, er_d: Rational, er_s: Rational) {
        self.er_d = er_d;
        self.er_s = er_s;
        self.deviation = er_d - er_s;
    }

    pub(crate) fn flag(&mut self, name: &str, value: bool) {
        self.flags.insert(name.to_string(), value);
    }

    pub(crate) fn extra(&mut self, name: &str, value: Rational) {
        self.extras.insert(name.to_string(), value);
    }

    pub(crate) fn extra_int(&mut self, name: &str, value: impl Into<i128>) {
        self.extra(name, Rational::from_integer(value.into()));
    }

    pub fn flag_set(&self, name: &str) -> bool {
        self.flags.get(name).copied().unwrap_or(false)
    }
}
