use std::io::Write;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decider::{Answer, DeciderSpec};
use super::instance::{generate_gap_instance, GapProblemSpec, Generated, GroundTruth};
use crate::process::{trial_seed, RuleSpec};
use crate::stats::{wilson_interval, Z95};
use crate::Result;

pub const GAP_CSV_HEADER: &str =
    "rule,decider,n,c1,c2,trials,errors,excluded,error_rate,ci_low,ci_high";

/// Rules every decider is scored against. All of them accept any `l`.
pub fn adversary_library() -> Vec<RuleSpec> {
    vec![
        RuleSpec::AlwaysFirst,
        RuleSpec::MajorityPositive,
        RuleSpec::AntiMajority,
        RuleSpec::VariableConcentrator,
        RuleSpec::ContradictionSeeker,
        RuleSpec::RandomCoin,
    ]
}

/// YES on an instance already unsatisfiable at `c1 n`, or NO on one still
/// satisfiable at `c2 n`.
pub fn is_error(answer: Answer, truth: &GroundTruth) -> bool {
    match answer {
        Answer::Yes => !truth.sat_low,
        Answer::No => truth.sat_high,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceScore {
    pub rule: RuleSpec,
    pub trial: usize,
    pub seed: u64,
    /// `None` when the instance was excluded.
    pub truth: Option<GroundTruth>,
    pub answer: Option<Answer>,
    pub error: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleScore {
    pub rule: RuleSpec,
    pub decider: String,
    pub n: usize,
    pub c1: f64,
    pub c2: f64,
    pub trials: usize,
    pub errors: usize,
    pub excluded: usize,
    pub monotonicity_violations: usize,
    /// Over decided instances only.
    pub error_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub spec: GapProblemSpec,
    pub decider: String,
    pub per_rule: Vec<RuleScore>,
    pub instances: Vec<InstanceScore>,
}

impl GapReport {
    /// The rule with the highest error rate (first on ties).
    pub fn worst(&self) -> Option<&RuleScore> {
        self.per_rule
            .iter()
            .reduce(|a, b| if b.error_rate > a.error_rate { b } else { a })
    }

    pub fn monotonicity_violations(&self) -> usize {
        self.per_rule
            .iter()
            .map(|r| r.monotonicity_violations)
            .sum()
    }
}

/// Scores `decider` on `trials` fresh instances per rule. Instance `t` of
/// the `i`-th rule uses seed `trial_seed(trial_seed(seed, i), t)`, so
/// results do not depend on thread count.
pub fn score_decider(
    decider: &DeciderSpec,
    rules: &[RuleSpec],
    spec: &GapProblemSpec,
    trials: usize,
    seed: u64,
    budget: Duration,
) -> Result<GapReport> {
    spec.validate()?;
    let jobs: Vec<(usize, usize)> = (0..rules.len())
        .flat_map(|i| (0..trials).map(move |t| (i, t)))
        .collect();
    let instances = jobs
        .into_par_iter()
        .map(|(i, t)| -> Result<InstanceScore> {
            let s = trial_seed(trial_seed(seed, i), t);
            let rule = rules[i];
            Ok(match generate_gap_instance(spec, rule, s, budget)? {
                Generated::Indeterminate { .. } => InstanceScore {
                    rule,
                    trial: t,
                    seed: s,
                    truth: None,
                    answer: None,
                    error: false,
                },
                Generated::Decided(inst) => {
                    let answer = decider.build(trial_seed(s, 1)).decide(inst.stream(), spec);
                    InstanceScore {
                        rule,
                        trial: t,
                        seed: s,
                        truth: Some(*inst.truth()),
                        answer: Some(answer),
                        error: is_error(answer, inst.truth()),
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let per_rule = rules
        .iter()
        .enumerate()
        .map(|(i, &rule)| {
            let mine = &instances[i * trials..(i + 1) * trials];
            let excluded = mine.iter().filter(|s| s.truth.is_none()).count();
            let errors = mine.iter().filter(|s| s.error).count();
            let monotonicity_violations = mine
                .iter()
                .filter(|s| s.truth.is_some_and(|t| !t.is_monotone()))
                .count();
            let decided = trials - excluded;
            let ci = wilson_interval(errors as u64, decided as u64, Z95);
            RuleScore {
                rule,
                decider: decider.name(),
                n: spec.n,
                c1: spec.c1,
                c2: spec.c2,
                trials,
                errors,
                excluded,
                monotonicity_violations,
                error_rate: if decided == 0 {
                    0.0
                } else {
                    errors as f64 / decided as f64
                },
                ci_low: ci.low,
                ci_high: ci.high,
            }
        })
        .collect();

    Ok(GapReport {
        spec: *spec,
        decider: decider.name(),
        per_rule,
        instances,
    })
}

pub fn write_gap_csv<W: Write>(rows: &[RuleScore], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(GAP_CSV_HEADER.split(','))?;
    for r in rows {
        w.write_record([
            r.rule.name().to_string(),
            r.decider.clone(),
            r.n.to_string(),
            r.c1.to_string(),
            r.c2.to_string(),
            r.trials.to_string(),
            r.errors.to_string(),
            r.excluded.to_string(),
            format!("{:.6}", r.error_rate),
            format!("{:.6}", r.ci_low),
            format!("{:.6}", r.ci_high),
        ])?;
    }
    w.flush()?;
    Ok(())
}
