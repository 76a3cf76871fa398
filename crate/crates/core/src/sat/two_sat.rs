use super::{Assignment, Formula, Verdict};
use crate::reduction::ImplicationGraph;
use crate::Result;

/// Linear-time 2-SAT: unsatisfiable iff some `x` and `~x` share a strongly
/// connected component of the implication graph.
///
/// The witness sets `x` true when its component comes later in topological
/// order than that of `~x`.
pub fn two_sat_satisfiable(f: &Formula) -> Result<Verdict> {
    let graph = ImplicationGraph::from_formula(f)?;
    let comp = graph.strongly_connected_components();
    let mut values = Vec::with_capacity(f.n());
    for v in 0..f.n() {
        let (pos, neg) = (comp[2 * v], comp[2 * v + 1]);
        if pos == neg {
            return Ok(Verdict::Unsat);
        }
        // components are numbered sinks first
        values.push(pos < neg);
    }
    Ok(Verdict::Sat(Assignment::new(values)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{brute_force_satisfiable, Clause, Literal};
    use crate::Error;

    fn f2(n: usize, clauses: &[[i64; 2]]) -> Formula {
        Formula::with_clauses(
            n,
            2,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_clause_sat() {
        let f = f2(2, &[[1, 2]]);
        let v = two_sat_satisfiable(&f).unwrap();
        assert!(f.is_satisfied_by(v.witness().unwrap()));
    }

    #[test]
    fn four_patterns_unsat() {
        let f = f2(2, &[[1, 2], [-1, 2], [1, -2], [-1, -2]]);
        assert_eq!(two_sat_satisfiable(&f).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn rejects_other_widths() {
        let f = Formula::with_clauses(3, 3, vec![Clause::from_dimacs(&[1, 2, 3])]).unwrap();
        assert!(matches!(
            two_sat_satisfiable(&f),
            Err(Error::Width {
                expected: 2,
                found: 3
            })
        ));
    }

    /// Every formula on n = 4 whose clauses are a multiset of at most 5
    /// distinct-variable 2-clauses, drawn by striding through the full
    /// enumeration.
    #[test]
    fn agrees_with_brute_force_on_enumeration() {
        let n = 4u32;
        let mut all = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a == b {
                    continue;
                }
                for sa in [true, false] {
                    for sb in [true, false] {
                        all.push(
                            Clause::new(vec![Literal::new(a, sa), Literal::new(b, sb)]).unwrap(),
                        );
                    }
                }
            }
        }
        let c = all.len(); // 48 ordered clauses
        let mut checked = 0;
        for m in 0..=5usize {
            let total = c.pow(m as u32);
            let stride = (total / 4000).max(1);
            let mut idx = 0;
            while idx < total {
                let mut x = idx;
                let clauses = (0..m)
                    .map(|_| {
                        let cl = all[x % c].clone();
                        x /= c;
                        cl
                    })
                    .collect();
                let f = Formula::with_clauses(n as usize, 2, clauses).unwrap();
                let want = brute_force_satisfiable(&f).unwrap().is_sat();
                let got = two_sat_satisfiable(&f).unwrap();
                assert_eq!(want, got.is_sat(), "{f:?}");
                if let Some(w) = got.witness() {
                    assert!(f.is_satisfied_by(w));
                }
                checked += 1;
                idx += stride;
            }
        }
        assert!(checked > 14_000);
    }
}
