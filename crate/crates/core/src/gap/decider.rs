use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::instance::{ClauseStream, GapProblemSpec};
use crate::reduction::reduce_to_2sat;
use crate::sat::{unit_propagate, Formula, Literal, Propagation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

/// A decider for the gap problem. It is handed the clause stream and the
/// public problem parameters, never the instance's ground truth:
///
/// ```compile_fail
/// use achlioptas_core::gap::*;
/// use achlioptas_core::process::RuleSpec;
///
/// let spec = GapProblemSpec { n: 20, ..GapProblemSpec::default() };
/// let Generated::Decided(inst) =
///     generate_gap_instance(&spec, RuleSpec::AlwaysFirst, 0, DEFAULT_BUDGET).unwrap()
/// else { return };
/// let mut d = DeciderSpec::ConstantYes.build(0);
/// d.decide(&inst, &spec); // a GapInstance is not a ClauseStream
/// ```
pub trait DecisionAlgorithm: Send {
    fn name(&self) -> String;
    fn decide(&mut self, stream: &ClauseStream, spec: &GapProblemSpec) -> Answer;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    /// Fraction of clauses with at least two positive literals.
    PositiveBias,
    /// Fraction of random single-literal probes that survive unit
    /// propagation.
    UnitPropagationSurvival,
    /// Edge density of the 2-core of the reduced formula's variable graph.
    /// Scored negated, so larger means "more likely satisfiable".
    TwoCoreDensity,
}

impl Statistic {
    pub const ALL: [Statistic; 3] = [
        Statistic::PositiveBias,
        Statistic::UnitPropagationSurvival,
        Statistic::TwoCoreDensity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::PositiveBias => "positive-bias",
            Statistic::UnitPropagationSurvival => "unit-propagation-survival",
            Statistic::TwoCoreDensity => "two-core-density",
        }
    }

    /// Oriented score: the decider answers YES iff `score >= threshold`.
    pub fn score(self, f: &Formula, rng: &mut impl Rng) -> f64 {
        match self {
            Statistic::PositiveBias => positive_bias(f),
            Statistic::UnitPropagationSurvival => {
                unit_propagation_survival(f, SURVIVAL_PROBES, rng)
            }
            Statistic::TwoCoreDensity => -two_core_density(f),
        }
    }
}

const SURVIVAL_PROBES: usize = 32;

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('_', "-");
        Statistic::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or(Error::Unknown {
                kind: "statistic",
                name: s,
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeciderSpec {
    ConstantYes,
    ConstantNo,
    Statistic {
        statistic: Statistic,
        threshold: f64,
    },
}

/// Thresholds may be infinite (giving a constant decider) but not NaN.
pub fn statistic_decider(statistic: Statistic, threshold: f64) -> Result<DeciderSpec> {
    if threshold.is_nan() {
        return Err(Error::params("decider threshold is NaN"));
    }
    Ok(DeciderSpec::Statistic {
        statistic,
        threshold,
    })
}

impl DeciderSpec {
    pub fn name(&self) -> String {
        match self {
            DeciderSpec::ConstantYes => "constant-yes".into(),
            DeciderSpec::ConstantNo => "constant-no".into(),
            DeciderSpec::Statistic {
                statistic,
                threshold,
            } => {
                format!("{}:{}", statistic.name(), threshold)
            }
        }
    }

    pub fn build(&self, seed: u64) -> Box<dyn DecisionAlgorithm> {
        match *self {
            DeciderSpec::ConstantYes => Box::new(Constant(Answer::Yes)),
            DeciderSpec::ConstantNo => Box::new(Constant(Answer::No)),
            DeciderSpec::Statistic {
                statistic,
                threshold,
            } => Box::new(Threshold {
                statistic,
                threshold,
                rng: ChaCha8Rng::seed_from_u64(seed),
            }),
        }
    }
}

impl fmt::Display for DeciderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `constant-yes`, `constant-no`, or `<statistic>:<threshold>`; the
/// threshold accepts `inf` and `-inf`.
impl FromStr for DeciderSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant-yes" | "yes" => return Ok(DeciderSpec::ConstantYes),
            "constant-no" | "no" => return Ok(DeciderSpec::ConstantNo),
            _ => {}
        }
        let (stat, thr) = s.split_once(':').ok_or(Error::Unknown {
            kind: "decider",
            name: s.to_string(),
        })?;
        let threshold: f64 = thr
            .trim()
            .parse()
            .map_err(|_| Error::params(format!("bad decider threshold {thr:?}")))?;
        statistic_decider(stat.trim().parse()?, threshold)
    }
}

struct Constant(Answer);

impl DecisionAlgorithm for Constant {
    fn name(&self) -> String {
        match self.0 {
            Answer::Yes => "constant-yes".into(),
            Answer::No => "constant-no".into(),
        }
    }

    fn decide(&mut self, _: &ClauseStream, _: &GapProblemSpec) -> Answer {
        self.0
    }
}

struct Threshold {
    statistic: Statistic,
    threshold: f64,
    rng: ChaCha8Rng,
}

impl DecisionAlgorithm for Threshold {
    fn name(&self) -> String {
        format!("{}:{}", self.statistic.name(), self.threshold)
    }

    fn decide(&mut self, stream: &ClauseStream, spec: &GapProblemSpec) -> Answer {
        if self.threshold == f64::NEG_INFINITY {
            return Answer::Yes;
        }
        if self.threshold == f64::INFINITY {
            return Answer::No;
        }
        let prefix = stream.prefix(spec.low_steps().min(stream.len()));
        if self.statistic.score(&prefix, &mut self.rng) >= self.threshold {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

/// Fraction of clauses with at least two positive literals; 0 when empty.
pub fn positive_bias(f: &Formula) -> f64 {
    if f.is_empty() {
        return 0.0;
    }
    let hits = f
        .clauses()
        .iter()
        .filter(|c| c.positive_count() >= 2)
        .count();
    hits as f64 / f.len() as f64
}

/// Fraction of `probes` uniformly random literals whose assertion does not
/// lead to a conflict under unit propagation. A formula that conflicts
/// with no assumptions scores 0.
pub fn unit_propagation_survival(f: &Formula, probes: usize, rng: &mut impl Rng) -> f64 {
    if probes == 0 || f.n() == 0 {
        return 1.0;
    }
    if matches!(unit_propagate(f, &[]), Propagation::Conflict) {
        return 0.0;
    }
    let survived = (0..probes)
        .filter(|_| {
            let lit = Literal::new(rng.random_range(1..=f.n() as u32), rng.random::<bool>());
            matches!(unit_propagate(f, &[lit]), Propagation::Consistent { .. })
        })
        .count();
    survived as f64 / probes as f64
}

/// Reduce to 2-SAT, view each clause as an edge between its two variables,
/// peel vertices of degree below 2, and return edges per vertex of what
/// remains (0 for an empty core). Loops cannot occur since clause variables
/// are distinct; parallel edges count separately.
pub fn two_core_density(f: &Formula) -> f64 {
    let g = match f.k() {
        1 => return 0.0,
        2 => f.clone(),
        _ => reduce_to_2sat(f).expect("k >= 2"),
    };
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in g.clauses() {
        let l = c.literals();
        let (a, b) = (l[0].var_index(), l[1].var_index());
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &u in &adj[v] {
            if !removed[u] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    stack.push(u);
                }
            }
        }
    }
    let vertices = removed.iter().filter(|r| !**r).count();
    if vertices == 0 {
        return 0.0;
    }
    let edges: usize = (0..n)
        .filter(|&v| !removed[v])
        .map(|v| deg[v])
        .sum::<usize>()
        / 2;
    edges as f64 / vertices as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::Clause;

    fn f2(n: usize, cls: &[[i64; 2]]) -> Formula {
        Formula::with_clauses(n, 2, cls.iter().map(|c| Clause::from_dimacs(c)).collect()).unwrap()
    }

    #[test]
    fn parse_deciders() {
        assert_eq!(
            "constant-yes".parse::<DeciderSpec>().unwrap(),
            DeciderSpec::ConstantYes
        );
        let d: DeciderSpec = "positive_bias:-inf".parse().unwrap();
        assert_eq!(
            d,
            DeciderSpec::Statistic {
                statistic: Statistic::PositiveBias,
                threshold: f64::NEG_INFINITY
            }
        );
        assert!("positive-bias:NaN".parse::<DeciderSpec>().is_err());
        assert!("bogus:1".parse::<DeciderSpec>().is_err());
        assert!("positive-bias".parse::<DeciderSpec>().is_err());
        assert!(statistic_decider(Statistic::TwoCoreDensity, f64::NAN).is_err());
    }

    #[test]
    fn infinite_thresholds_are_constant() {
        let spec = GapProblemSpec {
            n: 10,
            ..GapProblemSpec::default()
        };
        let stream = ClauseStream::new(Formula::new(10, 3).unwrap());
        for st in Statistic::ALL {
            let yes = statistic_decider(st, f64::NEG_INFINITY).unwrap();
            let no = statistic_decider(st, f64::INFINITY).unwrap();
            assert_eq!(yes.build(0).decide(&stream, &spec), Answer::Yes);
            assert_eq!(no.build(0).decide(&stream, &spec), Answer::No);
        }
    }

    #[test]
    fn two_core_of_cycle_with_tail() {
        // triangle 1-2-3 plus pendant path 3-4-5
        let f = f2(5, &[[1, 2], [2, 3], [3, 1], [3, 4], [4, 5]]);
        assert_eq!(two_core_density(&f), 1.0);
        let tree = f2(4, &[[1, 2], [2, 3], [3, 4]]);
        assert_eq!(two_core_density(&tree), 0.0);
        // doubled edge forms a core of two vertices
        let dbl = f2(3, &[[1, 2], [-1, -2], [2, 3]]);
        assert_eq!(two_core_density(&dbl), 1.0);
    }

    #[test]
    fn survival_detects_forced_conflict() {
        let f = f2(2, &[[1, 2], [1, -2], [-1, 2], [-1, -2]]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(unit_propagation_survival(&f, 16, &mut rng), 0.0);
        let easy = f2(3, &[[1, 2]]);
        assert_eq!(unit_propagation_survival(&easy, 16, &mut rng), 1.0);
    }

    #[test]
    fn bias_counts_clauses() {
        let f = Formula::with_clauses(
            4,
            3,
            vec![
                Clause::from_dimacs(&[1, 2, -3]),
                Clause::from_dimacs(&[-1, -2, 3]),
            ],
        )
        .unwrap();
        assert_eq!(positive_bias(&f), 0.5);
    }
}
