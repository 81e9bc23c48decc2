//! Named constants used by bound formulas and success predicates.
//!
//! Every constant defaults to the value used in the corresponding proof (or
//! to 1 where the proof leaves it unspecified). Experiments can override any
//! of them by name, e.g. `--const thm3_c=1/4` on the command line.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::rational::{parse_rational, Rational};

macro_rules! ledger {
    ($( $(#[doc = $doc:literal])* $name:ident = ($num:expr, $den:expr) ),+ $(,)?) => {
        #[derive(Debug, Clone, PartialEq, Serialize)]
        pub struct Constants {
            $( $(#[doc = $doc])* pub $name: Rational, )+
        }

        impl Default for Constants {
            fn default() -> Self {
                Self { $( $name: Rational::new($num, $den), )+ }
            }
        }

        impl Constants {
            pub const NAMES: &'static [&'static str] = &[$(stringify!($name)),+];

            pub fn get(&self, name: &str) -> Option<Rational> {
                match name {
                    $( stringify!($name) => Some(self.$name), )+
                    _ => None,
                }
            }

            fn slot(&mut self, name: &str) -> Option<&mut Rational> {
                match name {
                    $( stringify!($name) => Some(&mut self.$name), )+
                    _ => None,
                }
            }
        }
    };
}

ledger! {
    /// Leading constant of the first-order VC bound (unspecified; 1).
    thm1_c = (1, 1),
    /// Numerator inside ln(2/delta) of the realizable homogeneous bound.
    thm4_log_numerator = (2, 1),
    /// Leading constant of the bandwise log-free bound.
    band_c = (1, 1),
    /// Case-split constant for replacing 2^-i by the empirical error.
    band_case_split_c = (8, 1),
    /// Leading constant of the in-sample band bound.
    band_in_sample_c = (1, 1),
    /// Leading constant of the dyadic union-bound corollary.
    dyadic_c = (1, 1),
    /// Denominator of the realizable lower-bound target d ln(n/d) / (144 n).
    thm2_denominator = (144, 1),
    /// Probability of the realizable lower-bound event.
    thm2_event_probability = (1, 15),
    /// Fraction of blocks guaranteed a missing point on the event.
    thm2_block_fraction = (1, 32),
    /// Block divisor in ceil(d / 256).
    thm3_block_divisor = (256, 1),
    /// Constant of the agnostic lower-bound success predicate.
    thm3_c = (1, 2),
    /// Admissible-range constant c1 for tau.
    thm3_c1 = (1, 1),
    /// Constant c2 in k = c2 n / ln ln n.
    thm7_c2 = (1, 100),
    /// Constant c of the per-band deficit threshold.
    thm7_deficit_c = (1, 1),
    /// Constant c' of the dyadic success predicate.
    thm7_success_c = (1, 4),
    /// Threshold constant of the within-constants audit.
    lemma8_c = (4, 1),
}

impl Constants {
    /// Override one constant. `value` is a decimal or `p/q`.
    pub fn set(&mut self, name: &str, value: &str) -> Result<()> {
        let parsed = parse_rational(value)?;
        match self.slot(name) {
            Some(slot) => {
                *slot = parsed;
                Ok(())
            }
            None => invalid(format!("unknown constant `{name}`")),
        }
    }

    /// Apply `name=value` overrides in order.
    pub fn with_overrides<S: AsRef<str>>(mut self, overrides: &[S]) -> Result<Self> {
        for item in overrides {
            let item = item.as_ref();
            let Some((name, value)) = item.split_once('=') else {
                return invalid(format!("constant override `{item}` is not name=value"));
            };
            self.set(name.trim(), value.trim())?;
        }
        Ok(self)
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, Rational> {
        Self::NAMES
            .iter()
            .map(|name| (*name, self.get(name).expect("listed name")))
            .collect()
    }

    pub fn f64(&self, name: &str) -> f64 {
        crate::rational::to_f64(&self.get(name).expect("known constant"))
    }
}

impl fmt::Display for Constants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in self.as_map() {
            writeln!(f, "{name} = {value}")?;
        }
        Ok(())
    }
}
