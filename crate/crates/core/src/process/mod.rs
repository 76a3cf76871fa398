//! The l-clause Achlioptas k-SAT process, its rule library and the seeded
//! Monte Carlo harness.
//!
//! Starting from the empty formula, every step draws `l` clauses uniformly
//! with replacement, a [`SelectionRule`] picks one of them, and that clause
//! is appended. Rules see the candidates, the current formula and (on
//! request) the history of presented clauses, but never future draws.

mod biased;
mod engine;
mod monte_carlo;
mod output;
mod rules;

pub use biased::biased_3sat_sampler;
pub use engine::{run_process, Process, ProcessConfig};
pub use monte_carlo::{
    monte_carlo_sat_fraction, run_trial, trial_seed, Checkpoint, Decider, MonteCarloConfig,
    MonteCarloResult, RatioSummary, TrialRecord,
};
pub use output::{write_trial_csv, TRIAL_CSV_HEADER};
pub use rules::{
    always_first_rule, anti_majority_rule, majority_positive_rule, symmetric_candidate_rule,
    ProcessView, RuleSpec, SelectionRule, SymmetricMode,
};
