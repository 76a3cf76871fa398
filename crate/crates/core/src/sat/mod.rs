//! Formula types, uniform clause sampling and exact satisfiability deciders.

mod brute;
mod dimacs;
mod dpll;
mod formula;
mod literal;
pub(crate) mod sample;
mod two_sat;

pub use brute::{brute_force_satisfiable, BRUTE_FORCE_MAX_VARS};
pub use dimacs::{read_dimacs, write_dimacs};
pub use dpll::{dpll_satisfiable, dpll_with_deadline, unit_propagate, Propagation, Timeout};
pub use formula::{Assignment, Formula};
pub use literal::{Clause, Literal};
pub use sample::{sample_clause, sample_distinct_vars};
pub use two_sat::two_sat_satisfiable;

/// Outcome of an exact decider. `Sat` carries a satisfying witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sat(Assignment),
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            Verdict::Sat(a) => Some(a),
            Verdict::Unsat => None,
        }
    }
}
