use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::reduction::reduce_clause;
use crate::sat::{Clause, Formula, Literal};
use crate::{Error, Result};

/// Everything a rule may look at besides the candidates themselves.
pub struct ProcessView<'a> {
    /// Clauses chosen so far.
    pub formula: &'a Formula,
    /// Every candidate presented at earlier steps, `l` per step. Empty unless
    /// the rule asks for it through [`SelectionRule::needs_history`].
    pub history: &'a [Clause],
    /// 0-based index of the current step.
    pub step: usize,
}

/// Picks one of the `l` candidate clauses presented at a step.
///
/// Indices are 0-based: the result must lie in `0..candidates.len()`. A rule
/// is built per trajectory and may keep incremental state, but only from
/// what it has been shown.
pub trait SelectionRule: Send {
    fn name(&self) -> String;

    fn choose(
        &mut self,
        candidates: &[Clause],
        view: &ProcessView<'_>,
        rng: &mut dyn RngCore,
    ) -> usize;

    fn needs_history(&self) -> bool {
        false
    }
}

/// Index of the first of the first `l - 1` candidates with at least two
/// positive literals, else the last candidate.
pub fn majority_positive_rule(candidates: &[Clause]) -> usize {
    let last = candidates.len() - 1;
    candidates[..last]
        .iter()
        .position(|c| c.positive_count() >= 2)
        .unwrap_or(last)
}

/// Mirror image of [`majority_positive_rule`]: the first of the first
/// `l - 1` candidates with at most one positive literal, else the last.
pub fn anti_majority_rule(candidates: &[Clause]) -> usize {
    let last = candidates.len() - 1;
    candidates[..last]
        .iter()
        .position(|c| c.positive_count() <= 1)
        .unwrap_or(last)
}

/// Always keeps the first candidate, which reproduces classic random k-SAT.
pub fn always_first_rule(_candidates: &[Clause]) -> usize {
    0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetricMode {
    /// Keep clause 1 iff every one of its literals already occurs.
    All,
    /// Keep clause 1 iff none of its literals occurs yet.
    None,
}

fn symmetric_pick(first: &Clause, mode: SymmetricMode, seen: impl Fn(Literal) -> bool) -> usize {
    let keep_first = match mode {
        SymmetricMode::All => first.literals().iter().all(|&l| seen(l)),
        SymmetricMode::None => !first.literals().iter().any(|&l| seen(l)),
    };
    if keep_first {
        0
    } else {
        1
    }
}

/// Two-candidate rule that treats all assignments alike: keep clause 1 when
/// all (or none) of its literals, with their signs, already occur in the
/// formula; otherwise keep clause 2.
pub fn symmetric_candidate_rule(
    candidates: &[Clause],
    formula: &Formula,
    mode: SymmetricMode,
) -> Result<usize> {
    if candidates.len() != 2 {
        return Err(Error::Arity {
            rule: format!("symmetric-{}", mode_name(mode)),
            expected: 2,
            found: candidates.len(),
        });
    }
    let occurs = |l: Literal| formula.clauses().iter().any(|c| c.literals().contains(&l));
    Ok(symmetric_pick(&candidates[0], mode, occurs))
}

fn mode_name(mode: SymmetricMode) -> &'static str {
    match mode {
        SymmetricMode::All => "all",
        SymmetricMode::None => "none",
    }
}

/// Serializable identifier of a shipped rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleSpec {
    AlwaysFirst,
    MajorityPositive,
    AntiMajority,
    SymmetricAll,
    SymmetricNone,
    /// Prefers candidates with the most literals on the lowest `ceil(n/10)`
    /// variables.
    VariableConcentrator,
    /// Prefers a candidate whose 2-SAT image closes a short cycle in the
    /// implication graph of the reduced formula so far.
    ContradictionSeeker,
    RandomCoin,
}

impl RuleSpec {
    pub const ALL: [RuleSpec; 8] = [
        RuleSpec::AlwaysFirst,
        RuleSpec::MajorityPositive,
        RuleSpec::AntiMajority,
        RuleSpec::SymmetricAll,
        RuleSpec::SymmetricNone,
        RuleSpec::VariableConcentrator,
        RuleSpec::ContradictionSeeker,
        RuleSpec::RandomCoin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleSpec::AlwaysFirst => "always-first",
            RuleSpec::MajorityPositive => "majority-positive",
            RuleSpec::AntiMajority => "anti-majority",
            RuleSpec::SymmetricAll => "symmetric-all",
            RuleSpec::SymmetricNone => "symmetric-none",
            RuleSpec::VariableConcentrator => "variable-concentrator",
            RuleSpec::ContradictionSeeker => "contradiction-seeker",
            RuleSpec::RandomCoin => "random-coin",
        }
    }

    /// Rejects `l` values the rule cannot work with.
    pub fn check_arity(self, l: usize) -> Result<()> {
        let required = match self {
            RuleSpec::SymmetricAll | RuleSpec::SymmetricNone => Some(2),
            _ => None,
        };
        match required {
            Some(expected) if expected != l => Err(Error::Arity {
                rule: self.name().to_string(),
                expected,
                found: l,
            }),
            _ => Ok(()),
        }
    }

    /// A fresh rule instance for one trajectory over `n` variables.
    pub fn build(self, n: usize) -> Box<dyn SelectionRule> {
        match self {
            RuleSpec::AlwaysFirst => Box::new(Stateless(self, always_first_rule)),
            RuleSpec::MajorityPositive => Box::new(Stateless(self, majority_positive_rule)),
            RuleSpec::AntiMajority => Box::new(Stateless(self, anti_majority_rule)),
            RuleSpec::SymmetricAll => Box::new(Symmetric::new(n, SymmetricMode::All)),
            RuleSpec::SymmetricNone => Box::new(Symmetric::new(n, SymmetricMode::None)),
            RuleSpec::VariableConcentrator => Box::new(Concentrator {
                cutoff: n.div_ceil(10) as u32,
            }),
            RuleSpec::ContradictionSeeker => Box::new(ContradictionSeeker::new(n)),
            RuleSpec::RandomCoin => Box::new(RandomCoin),
        }
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RuleSpec::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "rule",
                name: s.to_string(),
            })
    }
}

struct Stateless(RuleSpec, fn(&[Clause]) -> usize);

impl SelectionRule for Stateless {
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn choose(&mut self, candidates: &[Clause], _: &ProcessView<'_>, _: &mut dyn RngCore) -> usize {
        (self.1)(candidates)
    }
}

/// Tracks which signed literals occur in the formula so far.
struct Symmetric {
    mode: SymmetricMode,
    seen: Vec<bool>,
    synced: usize,
}

impl Symmetric {
    fn new(n: usize, mode: SymmetricMode) -> Self {
        Symmetric {
            mode,
            seen: vec![false; 2 * n],
            synced: 0,
        }
    }
}

impl SelectionRule for Symmetric {
    fn name(&self) -> String {
        format!("symmetric-{}", mode_name(self.mode))
    }

    fn choose(
        &mut self,
        candidates: &[Clause],
        view: &ProcessView<'_>,
        _: &mut dyn RngCore,
    ) -> usize {
        assert_eq!(
            candidates.len(),
            2,
            "symmetric rule needs exactly two candidates"
        );
        for c in &view.formula.clauses()[self.synced..] {
            for l in c.literals() {
                self.seen[l.code() as usize] = true;
            }
        }
        self.synced = view.formula.len();
        symmetric_pick(&candidates[0], self.mode, |l| self.seen[l.code() as usize])
    }
}

struct Concentrator {
    cutoff: u32,
}

impl SelectionRule for Concentrator {
    fn name(&self) -> String {
        RuleSpec::VariableConcentrator.name().to_string()
    }

    fn choose(&mut self, candidates: &[Clause], _: &ProcessView<'_>, _: &mut dyn RngCore) -> usize {
        let score = |c: &Clause| {
            c.literals()
                .iter()
                .filter(|l| l.var() <= self.cutoff)
                .count()
        };
        let mut best = 0;
        for (i, c) in candidates.iter().enumerate().skip(1) {
            if score(c) > score(&candidates[best]) {
                best = i;
            }
        }
        best
    }
}

/// Depth limit of the reachability probe, i.e. cycles of length at most
/// `CYCLE_PROBE_DEPTH + 1` count as short.
const CYCLE_PROBE_DEPTH: usize = 5;

/// Keeps the implication graph of the reduced formula incrementally.
struct ContradictionSeeker {
    adj: Vec<Vec<Literal>>,
    synced: usize,
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<(Literal, usize)>,
}

impl ContradictionSeeker {
    fn new(n: usize) -> Self {
        ContradictionSeeker {
            adj: vec![Vec::new(); 2 * n],
            synced: 0,
            mark: vec![0; 2 * n],
            epoch: 0,
            queue: VecDeque::new(),
        }
    }

    /// Whether `target` is reachable from `source` in at most `depth` edges.
    fn reaches(&mut self, source: Literal, target: Literal, depth: usize) -> bool {
        self.epoch += 1;
        self.queue.clear();
        self.queue.push_back((source, 0));
        self.mark[source.code() as usize] = self.epoch;
        while let Some((v, d)) = self.queue.pop_front() {
            if v == target {
                return true;
            }
            if d == depth {
                continue;
            }
            for &w in &self.adj[v.code() as usize] {
                let slot = &mut self.mark[w.code() as usize];
                if *slot != self.epoch {
                    *slot = self.epoch;
                    self.queue.push_back((w, d + 1));
                }
            }
        }
        false
    }
}

impl SelectionRule for ContradictionSeeker {
    fn name(&self) -> String {
        RuleSpec::ContradictionSeeker.name().to_string()
    }

    fn choose(
        &mut self,
        candidates: &[Clause],
        view: &ProcessView<'_>,
        _: &mut dyn RngCore,
    ) -> usize {
        for c in &view.formula.clauses()[self.synced..] {
            if let Ok(two) = reduce_clause(c) {
                let [a, b] = [two.literals()[0], two.literals()[1]];
                self.adj[a.negate().code() as usize].push(b);
                self.adj[b.negate().code() as usize].push(a);
            }
        }
        self.synced = view.formula.len();
        for (i, c) in candidates.iter().enumerate() {
            let Ok(two) = reduce_clause(c) else { continue };
            let [a, b] = [two.literals()[0], two.literals()[1]];
            // the new edge ~a -> b closes a cycle iff b already reaches ~a
            if self.reaches(b, a.negate(), CYCLE_PROBE_DEPTH) {
                return i;
            }
        }
        0
    }
}

struct RandomCoin;

impl SelectionRule for RandomCoin {
    fn name(&self) -> String {
        RuleSpec::RandomCoin.name().to_string()
    }

    fn choose(
        &mut self,
        candidates: &[Clause],
        _: &ProcessView<'_>,
        rng: &mut dyn RngCore,
    ) -> usize {
        rng.random_range(0..candidates.len())
    }
}
