//! k-SAT to 2-SAT sub-clause reduction, implication graphs, bicycles and the
//! independent-clause (binomial) 2-SAT model.

mod bicycle;
mod binomial;
mod graph;
mod reduce;

pub use bicycle::{find_bicycle, Bicycle, BICYCLE_SEARCH_MAX_VARS};
pub use binomial::{sample_binomial_2sat, BinomialTwoSatParams};
pub use graph::ImplicationGraph;
pub use reduce::{reduce_clause, reduce_to_2sat};
