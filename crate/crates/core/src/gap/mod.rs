//! The semi-random gap decision problem.
//!
//! An unknown selection rule drives an `l`-clause process for `c2 * n`
//! steps. A decider sees only the resulting clause stream and answers YES
//! or NO. It errs when the formula is already unsatisfiable at `c1 * n`
//! steps and it said YES, or still satisfiable at `c2 * n` steps and it
//! said NO; if satisfiability is first lost strictly between the two, both
//! answers are accepted. Performance is judged in the worst case over rules.

mod decider;
mod instance;
mod score;

pub use decider::{
    positive_bias, statistic_decider, two_core_density, unit_propagation_survival, Answer,
    DeciderSpec, DecisionAlgorithm, Statistic,
};
pub use instance::{
    gap_stream, generate_gap_instance, ClauseStream, GapInstance, GapProblemSpec, Generated,
    GroundTruth, DEFAULT_BUDGET,
};
pub use score::{
    adversary_library, is_error, score_decider, write_gap_csv, GapReport, InstanceScore, RuleScore,
    GAP_CSV_HEADER,
};
