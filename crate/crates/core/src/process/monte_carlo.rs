use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Process, ProcessConfig, RuleSpec};
use crate::sat::{dpll_satisfiable, two_sat_satisfiable, Formula};
use crate::stats::{wilson_interval, Interval, Z95};
use crate::{Error, Result};

/// Exact decider used at checkpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decider {
    Dpll,
    /// Implication-graph SCC test; width 2 only.
    TwoSat,
}

impl Decider {
    pub fn is_sat(self, f: &Formula) -> Result<bool> {
        match self {
            Decider::Dpll => Ok(dpll_satisfiable(f).is_sat()),
            Decider::TwoSat => Ok(two_sat_satisfiable(f)?.is_sat()),
        }
    }
}

impl std::str::FromStr for Decider {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dpll" => Ok(Decider::Dpll),
            "two-sat" => Ok(Decider::TwoSat),
            _ => Err(Error::Unknown {
                kind: "decider",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub rule: RuleSpec,
    /// Clause densities; checkpoint `i` sits at `round(ratios[i] * n)` steps.
    pub ratios: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub decider: Decider,
}

impl MonteCarloConfig {
    pub fn checkpoint_steps(&self) -> Vec<usize> {
        self.ratios
            .iter()
            .map(|r| (r * self.n as f64).round() as usize)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.process_config(0, 0).validate()?;
        if self.decider == Decider::TwoSat && self.k != 2 {
            return Err(Error::Width {
                expected: 2,
                found: self.k,
            });
        }
        if let Some(r) = self.ratios.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(Error::params(format!("ratio {r} must be finite and >= 0")));
        }
        Ok(())
    }

    fn process_config(&self, steps: usize, seed: u64) -> ProcessConfig {
        ProcessConfig {
            n: self.n,
            k: self.k,
            l: self.l,
            steps,
            seed,
            rule: self.rule,
        }
    }
}

/// Seed of trial `trial`: the first word of ChaCha8 stream `trial` keyed by
/// the master seed. Depends only on `(master, trial)`, so serial and
/// parallel runs see the same trajectories.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(trial as u64);
    rng.next_u64()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub ratio: f64,
    pub steps: usize,
    pub sat: bool,
    /// Wall time from the start of the trial to this verdict.
    pub millis: f64,
}

/// One seeded trajectory with a verdict at every checkpoint, listed in the
/// order of `MonteCarloConfig::ratios`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub config: ProcessConfig,
    pub checkpoints: Vec<Checkpoint>,
}

/// Runs one trajectory to the largest checkpoint, deciding each prefix.
/// Once a prefix is unsatisfiable every longer one is too, so later
/// checkpoints are not re-solved.
pub fn run_trial(cfg: &MonteCarloConfig, trial: usize) -> Result<TrialRecord> {
    let start = Instant::now();
    let seed = trial_seed(cfg.seed, trial);
    let steps = cfg.checkpoint_steps();
    let max_steps = steps.iter().copied().max().unwrap_or(0);
    let pcfg = cfg.process_config(max_steps, seed);
    let mut process = Process::new(&pcfg)?;

    let mut order: Vec<usize> = (0..steps.len()).collect();
    order.sort_by_key(|&i| steps[i]);
    let mut verdicts = vec![None; steps.len()];
    let mut unsat_seen = false;
    for i in order {
        process.run_to(steps[i]);
        let sat = !unsat_seen && cfg.decider.is_sat(process.formula())?;
        unsat_seen |= !sat;
        verdicts[i] = Some(Checkpoint {
            ratio: cfg.ratios[i],
            steps: steps[i],
            sat,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(TrialRecord {
        trial,
        seed,
        config: pcfg,
        checkpoints: verdicts.into_iter().map(|v| v.expect("filled")).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioSummary {
    pub ratio: f64,
    pub steps: usize,
    pub trials: usize,
    pub sat: usize,
    pub fraction: f64,
    pub wilson95: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<RatioSummary>,
}

/// Satisfiable fraction at every ratio over `cfg.trials` independent
/// trajectories, with 95% Wilson intervals.
///
/// Trials run on the current rayon pool; results are folded in trial order
/// and do not depend on the pool size. `trials == 0` yields an empty result.
pub fn monte_carlo_sat_fraction(cfg: &MonteCarloConfig) -> Result<MonteCarloResult> {
    cfg.validate()?;
    if cfg.trials == 0 {
        return Ok(MonteCarloResult {
            records: Vec::new(),
            summary: Vec::new(),
        });
    }
    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(cfg, &records);
    Ok(MonteCarloResult { records, summary })
}

fn summarize(cfg: &MonteCarloConfig, records: &[TrialRecord]) -> Vec<RatioSummary> {
    cfg.checkpoint_steps()
        .into_iter()
        .enumerate()
        .map(|(i, steps)| {
            let sat = records.iter().filter(|r| r.checkpoints[i].sat).count();
            let trials = records.len();
            RatioSummary {
                ratio: cfg.ratios[i],
                steps,
                trials,
                sat,
                fraction: sat as f64 / trials as f64,
                wilson95: wilson_interval(sat as u64, trials as u64, Z95),
            }
        })
        .collect()
}
