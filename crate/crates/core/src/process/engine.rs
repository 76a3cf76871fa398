use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ProcessView, RuleSpec, SelectionRule};
use crate::sat::sample::sample_clause_unchecked;
use crate::sat::{Clause, Formula};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProcessConfig {
    pub n: usize,
    pub k: usize,
    /// Candidates presented per step.
    pub l: usize,
    /// Clauses in the final formula.
    pub steps: usize,
    pub seed: u64,
    pub rule: RuleSpec,
}

impl ProcessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.l == 0 {
            return Err(Error::params("l must be at least 1"));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::params(format!(
                "need 1 <= k <= n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        self.rule.check_arity(self.l)
    }
}

/// One trajectory of the process, advanced a step at a time.
pub struct Process {
    n: usize,
    k: usize,
    l: usize,
    rng: ChaCha8Rng,
    rule: Box<dyn SelectionRule>,
    formula: Formula,
    candidates: Vec<Clause>,
    history: Vec<Clause>,
}

impl Process {
    pub fn new(cfg: &ProcessConfig) -> Result<Self> {
        cfg.validate()?;
        let rule = cfg.rule.build(cfg.n);
        Self::with_rule(cfg, rule)
    }

    /// Runs the process with a caller-supplied rule; `cfg.rule` is not used.
    pub fn with_rule(cfg: &ProcessConfig, rule: Box<dyn SelectionRule>) -> Result<Self> {
        if cfg.l == 0 || cfg.k == 0 || cfg.k > cfg.n {
            return Err(Error::params("need l >= 1 and 1 <= k <= n"));
        }
        Ok(Process {
            n: cfg.n,
            k: cfg.k,
            l: cfg.l,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            rule,
            formula: Formula::with_capacity_unchecked(cfg.n, cfg.k, cfg.steps),
            candidates: Vec::with_capacity(cfg.l),
            history: Vec::new(),
        })
    }

    /// Draws `l` candidates, lets the rule pick one and appends it.
    ///
    /// # Panics
    /// If the rule returns an index outside `0..l`.
    pub fn step(&mut self) -> &Clause {
        self.candidates.clear();
        for _ in 0..self.l {
            self.candidates
                .push(sample_clause_unchecked(self.n, self.k, &mut self.rng));
        }
        let view = ProcessView {
            formula: &self.formula,
            history: &self.history,
            step: self.formula.len(),
        };
        let pick = self.rule.choose(&self.candidates, &view, &mut self.rng);
        assert!(
            pick < self.l,
            "rule {} chose index {pick} of {} candidates",
            self.rule.name(),
            self.l
        );
        if self.rule.needs_history() {
            self.history.extend(self.candidates.iter().cloned());
        }
        let chosen = self.candidates.swap_remove(pick);
        self.formula.push_unchecked(chosen);
        self.formula.clauses().last().expect("just pushed")
    }

    /// Advances until the formula has `m` clauses.
    pub fn run_to(&mut self, m: usize) {
        while self.formula.len() < m {
            self.step();
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn into_formula(self) -> Formula {
        self.formula
    }

    pub fn rule_name(&self) -> String {
        self.rule.name()
    }
}

/// Runs `cfg.steps` steps from the empty formula. Deterministic in
/// `cfg.seed`.
pub fn run_process(cfg: &ProcessConfig) -> Result<Formula> {
    let mut p = Process::new(cfg)?;
    p.run_to(cfg.steps);
    Ok(p.into_formula())
}
