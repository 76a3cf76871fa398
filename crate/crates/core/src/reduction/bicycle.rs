use serde::Serialize;

use super::ImplicationGraph;
use crate::sat::Literal;
use crate::{Error, Result};

/// Largest `n` for which [`find_bicycle`] runs its exhaustive search.
pub const BICYCLE_SEARCH_MAX_VARS: usize = 20;

/// A directed path `w_1 -> ... -> w_t` (`t >= 2`) over distinct variables,
/// together with an entry edge `u -> w_1` and an exit edge `w_t -> v` whose
/// endpoints `u`, `v` are literals of the path's variables.
///
/// A 2-SAT formula whose implication graph contains no bicycle is
/// satisfiable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bicycle {
    pub path: Vec<Literal>,
    pub entry: Literal,
    pub exit: Literal,
}

impl Bicycle {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Re-checks every defining condition against `graph`.
    pub fn is_valid_in(&self, graph: &ImplicationGraph) -> bool {
        let t = self.path.len();
        if t < 2 {
            return false;
        }
        let vars: Vec<u32> = self.path.iter().map(|l| l.var()).collect();
        let distinct = vars.iter().enumerate().all(|(i, v)| !vars[..i].contains(v));
        distinct
            && vars.iter().all(|&v| v as usize <= graph.n())
            && self.path.windows(2).all(|w| graph.has_edge(w[0], w[1]))
            && vars.contains(&self.entry.var())
            && vars.contains(&self.exit.var())
            && graph.has_edge(self.entry, self.path[0])
            && graph.has_edge(self.path[t - 1], self.exit)
    }
}

/// Exhaustive depth-first search for a bicycle of length at most `max_len`.
///
/// Exponential in the worst case, so refuses graphs with more than
/// [`BICYCLE_SEARCH_MAX_VARS`] variables.
pub fn find_bicycle(graph: &ImplicationGraph, max_len: usize) -> Result<Option<Bicycle>> {
    if graph.n() > BICYCLE_SEARCH_MAX_VARS {
        return Err(Error::TooLarge {
            n: graph.n(),
            limit: BICYCLE_SEARCH_MAX_VARS,
        });
    }
    let max_len = max_len.min(graph.n());
    if max_len < 2 {
        return Ok(None);
    }
    let mut search = Search {
        graph,
        max_len,
        path: Vec::with_capacity(max_len),
    };
    for v in 0..graph.vertex_count() as u32 {
        let start = Literal::from_code(v);
        // w_1 needs an incoming edge at all
        if graph.predecessors(start).next().is_none() {
            continue;
        }
        search.path.push(start);
        let found = search.extend(1u32 << start.var_index());
        search.path.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

struct Search<'g> {
    graph: &'g ImplicationGraph,
    max_len: usize,
    path: Vec<Literal>,
}

impl Search<'_> {
    fn extend(&mut self, used: u32) -> Option<Bicycle> {
        let in_path = |l: Literal| used >> l.var_index() & 1 == 1;
        if self.path.len() >= 2 {
            let first = self.path[0];
            let last = *self.path.last().expect("nonempty");
            let entry = self.graph.predecessors(first).find(|&u| in_path(u));
            let exit = self
                .graph
                .successors(last)
                .iter()
                .copied()
                .find(|&v| in_path(v));
            if let (Some(entry), Some(exit)) = (entry, exit) {
                return Some(Bicycle {
                    path: self.path.clone(),
                    entry,
                    exit,
                });
            }
        }
        if self.path.len() == self.max_len {
            return None;
        }
        let last = *self.path.last().expect("nonempty");
        for &next in self.graph.successors(last) {
            if in_path(next) {
                continue;
            }
            self.path.push(next);
            let found = self.extend(used | 1 << next.var_index());
            self.path.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{Clause, Formula};

    fn graph(n: usize, clauses: &[[i64; 2]]) -> ImplicationGraph {
        let f = Formula::with_clauses(
            n,
            2,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
        .unwrap();
        ImplicationGraph::from_formula(&f).unwrap()
    }

    #[test]
    fn unsat_square_has_bicycle() {
        let g = graph(2, &[[1, 2], [-1, 2], [1, -2], [-1, -2]]);
        let b = find_bicycle(&g, 2).unwrap().expect("bicycle");
        assert!(b.is_valid_in(&g));
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn single_clause_has_none() {
        let g = graph(2, &[[1, 2]]);
        assert_eq!(find_bicycle(&g, 2).unwrap(), None);
    }

    #[test]
    fn length_one_never_reported() {
        let g = graph(3, &[[1, 2], [-1, 2], [1, -2], [-1, -2]]);
        assert_eq!(find_bicycle(&g, 1).unwrap(), None);
    }

    #[test]
    fn guard() {
        let g = graph(21, &[]);
        assert!(matches!(find_bicycle(&g, 5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn validation_rejects_tampering() {
        let g = graph(2, &[[1, 2], [-1, 2], [1, -2], [-1, -2]]);
        let mut b = find_bicycle(&g, 2).unwrap().unwrap();
        b.path.push(b.path[0]);
        assert!(!b.is_valid_in(&g));
    }

    /// A satisfiable formula may still contain bicycles; the chain
    /// x1 -> x2 -> x3 with the exit x3 -> ~x1 is one.
    #[test]
    fn satisfiable_formula_with_bicycle() {
        let g = graph(3, &[[-1, 2], [-2, 3], [-3, -1], [1, -3]]);
        let b = find_bicycle(&g, 3).unwrap().expect("bicycle");
        assert!(b.is_valid_in(&g));
    }
}
