use std::io::Write;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::process::{Process, ProcessConfig, RuleSpec};
use crate::sat::{dpll_with_deadline, Clause, Formula, Timeout};
use crate::{Error, Result};

/// Default wall-clock budget for the exact decider, per instance.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapProblemSpec {
    pub k: usize,
    pub l: usize,
    pub c1: f64,
    pub c2: f64,
    pub n: usize,
}

impl Default for GapProblemSpec {
    fn default() -> Self {
        GapProblemSpec {
            k: 3,
            l: 2,
            c1: 4.0,
            c2: 5.0,
            n: 100,
        }
    }
}

impl GapProblemSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.c1 > 0.0 && self.c1 < self.c2 && self.c2.is_finite()) {
            return Err(Error::params(format!(
                "need 0 < c1 < c2, got c1 = {}, c2 = {}",
                self.c1, self.c2
            )));
        }
        if self.l == 0 || self.k == 0 || self.k > self.n {
            return Err(Error::params("need l >= 1 and 1 <= k <= n"));
        }
        Ok(())
    }

    /// `round(c1 n)`
    pub fn low_steps(&self) -> usize {
        (self.c1 * self.n as f64).round() as usize
    }

    /// `round(c2 n)`, the stream length.
    pub fn high_steps(&self) -> usize {
        (self.c2 * self.n as f64).round() as usize
    }
}

/// The only thing a decider gets to see: the chosen clauses in arrival
/// order, without the rule or the rejected candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseStream {
    formula: Formula,
}

impl ClauseStream {
    pub fn new(formula: Formula) -> Self {
        ClauseStream { formula }
    }

    pub fn n(&self) -> usize {
        self.formula.n()
    }

    pub fn k(&self) -> usize {
        self.formula.k()
    }

    pub fn len(&self) -> usize {
        self.formula.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formula.is_empty()
    }

    pub fn clauses(&self) -> &[Clause] {
        self.formula.clauses()
    }

    /// The formula after the first `m` steps.
    pub fn prefix(&self, m: usize) -> Formula {
        self.formula.prefix(m)
    }

    /// `step,lit_1,...,lit_k` per line, steps 1-based, literals signed.
    pub fn write_clause_log<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, c) in self.clauses().iter().enumerate() {
            write!(out, "{}", i + 1)?;
            for l in c.literals() {
                write!(out, ",{}", l.to_dimacs())?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// Satisfiable after `round(c1 n)` steps.
    pub sat_low: bool,
    /// Satisfiable after `round(c2 n)` steps.
    pub sat_high: bool,
    /// Least `m` with an unsatisfiable `m`-step prefix, if any up to
    /// `round(c2 n)`.
    pub first_unsat_step: Option<usize>,
}

impl GroundTruth {
    /// Adding clauses never restores satisfiability.
    pub fn is_monotone(&self) -> bool {
        !self.sat_high || self.sat_low
    }
}

/// A generated stream together with its exact verdicts. Deciders receive
/// [`GapInstance::stream`] only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapInstance {
    seed: u64,
    stream: ClauseStream,
    truth: GroundTruth,
}

impl GapInstance {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> &ClauseStream {
        &self.stream
    }

    pub fn truth(&self) -> &GroundTruth {
        &self.truth
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Decided(GapInstance),
    /// The exact decider ran out of budget; the instance is excluded.
    Indeterminate {
        seed: u64,
    },
}

/// The `round(c2 n)`-step stream produced by `rule` under `seed`, without
/// solving anything.
pub fn gap_stream(spec: &GapProblemSpec, rule: RuleSpec, seed: u64) -> Result<ClauseStream> {
    spec.validate()?;
    let cfg = ProcessConfig {
        n: spec.n,
        k: spec.k,
        l: spec.l,
        steps: spec.high_steps(),
        seed,
        rule,
    };
    let mut process = Process::new(&cfg)?;
    process.run_to(cfg.steps);
    Ok(ClauseStream::new(process.into_formula()))
}

/// Runs `rule` for `round(c2 n)` steps and decides both checkpoints with
/// DPLL under a shared wall-clock `budget`. If the full stream is
/// unsatisfiable, the first unsatisfiable prefix is located by bisection.
pub fn generate_gap_instance(
    spec: &GapProblemSpec,
    rule: RuleSpec,
    seed: u64,
    budget: Duration,
) -> Result<Generated> {
    let deadline = Instant::now() + budget;
    let stream = gap_stream(spec, rule, seed)?;
    let (low, high) = (spec.low_steps(), spec.high_steps());

    let sat_at = |m: usize| -> std::result::Result<bool, Timeout> {
        Ok(dpll_with_deadline(&stream.prefix(m), deadline)?.is_sat())
    };
    let truth = (|| -> std::result::Result<GroundTruth, Timeout> {
        let sat_low = sat_at(low)?;
        let sat_high = sat_at(high)?;
        let first_unsat_step = if sat_high {
            None
        } else {
            // satisfiable at `lo` (the empty prefix always is), not at `hi`
            let (mut lo, mut hi) = if sat_low { (low, high) } else { (0, low) };
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if sat_at(mid)? {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Some(hi)
        };
        Ok(GroundTruth {
            sat_low,
            sat_high,
            first_unsat_step,
        })
    })();

    Ok(match truth {
        Ok(truth) => Generated::Decided(GapInstance {
            seed,
            stream,
            truth,
        }),
        Err(Timeout) => Generated::Indeterminate { seed },
    })
}
