//! Closed-form threshold analysis for the majority-positive rule.
//!
//! The rule keeps the first of the first `l - 1` candidates that has at least
//! two positive literals, else candidate `l`. Reducing its output to 2-SAT
//! gives clauses with 0, 1 or 2 positive literals with probabilities
//! `p0, p1, p2`, and the formula stays satisfiable up to density
//! `r(k, l) = 1 / (p1 + 2 sqrt(p0 p2))`.
//!
//! Logarithms are natural throughout.

mod bounds;
mod first_moment;
mod probs;
mod verify;

pub use bounds::{expected_bicycles_bound, expected_paths_bound, path_length_for, BoundValue};
pub use first_moment::{
    bias_for_density, binary_entropy, first_moment_critical_r, first_moment_exponent,
    max_first_moment, FirstMomentCurve,
};
pub use probs::{
    clause_type_probs, first_moment_upper_bound, q_probs, r_threshold, r_threshold_expanded,
    threshold_table, write_threshold_csv, ThresholdParams, RANDOM_3SAT_LOWER_BOUND,
    RANDOM_3SAT_UPPER_BOUND,
};
pub use verify::{formula_self_checks, verify_shift_conditions, Check, ShiftReport};
