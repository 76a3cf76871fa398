//! Simulation and analysis toolkit for l-clause Achlioptas random k-SAT processes.
//!
//! At every step of the process `l` uniformly random k-clauses are presented
//! and a selection rule keeps exactly one of them. The crate provides:
//!
//! * [`sat`]: literals, clauses and formulas, uniform clause sampling and three
//!   exact deciders (exhaustive, DPLL, linear-time 2-SAT).
//! * [`process`]: the process itself, a library of selection rules and a
//!   seeded, parallel Monte Carlo harness.
//! * [`reduction`]: the k-SAT to 2-SAT sub-clause reduction, implication
//!   graphs, bicycle search and the binomial 2-SAT model.
//! * [`threshold`]: closed-form threshold `r(k, l)`, clause-type probabilities,
//!   first-moment curves for biased 3-SAT and path/bicycle expectation bounds.
//! * [`gap`]: the semi-random gap decision problem and its scoring harness.

// `!(x >= 0.0)` is used deliberately so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gap;
pub mod process;
pub mod reduction;
pub mod sat;
pub mod stats;
pub mod threshold;

pub use error::{Error, Result};
