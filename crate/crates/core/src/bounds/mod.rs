//! Bound evaluators, binomial tails and exact lemma verifiers.

mod binomial;
mod formulas;
pub mod hp;
mod lemmas;

pub use binomial::{
    binom_cdf, binom_lower_exact, binom_lower_quantile_exact, binom_tail, binom_upper_exact,
    BinomQuery, TailSide, TailValue,
};
pub use formulas::{band_case_split, bound_value, BoundKind, BoundParams};
pub use lemmas::{
    delta_schedule, paley_zygmund_check, reverse_chernoff_check, reverse_chernoff_grid,
    DeltaSchedule, PaleyZygmund, ReverseChernoff,
};
