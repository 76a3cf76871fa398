use std::collections::HashMap;
use std::io::Write;

use crate::sat::{Formula, Literal};
use crate::{Error, Result};

/// Directed graph on the `2n` literals of a 2-SAT formula. Each clause
/// `(a | b)` contributes the edges `~a -> b` and `~b -> a`; parallel edges
/// from duplicate clauses are kept.
///
/// Vertex ids are [`Literal::code`] values. Adjacency is stored in
/// compressed-row form, so a built graph is immutable.
#[derive(Clone, Debug)]
pub struct ImplicationGraph {
    n: usize,
    offsets: Vec<u32>,
    targets: Vec<Literal>,
}

impl ImplicationGraph {
    pub fn from_formula(f: &Formula) -> Result<Self> {
        if f.k() != 2 {
            return Err(Error::Width {
                expected: 2,
                found: f.k(),
            });
        }
        let n = f.n();
        let mut offsets = vec![0u32; 2 * n + 1];
        for c in f.clauses() {
            let [a, b] = [c.literals()[0], c.literals()[1]];
            offsets[a.negate().code() as usize + 1] += 1;
            offsets[b.negate().code() as usize + 1] += 1;
        }
        for v in 0..2 * n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![Literal::from_code(0); 2 * f.len()];
        for c in f.clauses() {
            let [a, b] = [c.literals()[0], c.literals()[1]];
            for (from, to) in [(a.negate(), b), (b.negate(), a)] {
                let slot = &mut fill[from.code() as usize];
                targets[*slot as usize] = to;
                *slot += 1;
            }
        }
        Ok(ImplicationGraph {
            n,
            offsets,
            targets,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    /// Number of directed edges, with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, lit: Literal) -> &[Literal] {
        let v = lit.code() as usize;
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    /// Sources of edges into `lit`, derived through skew symmetry:
    /// `u -> lit` exists iff `~lit -> ~u` does.
    pub fn predecessors(&self, lit: Literal) -> impl Iterator<Item = Literal> + '_ {
        self.successors(lit.negate()).iter().map(|u| u.negate())
    }

    pub fn has_edge(&self, from: Literal, to: Literal) -> bool {
        self.successors(from).contains(&to)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Literal, Literal)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |v| {
            let from = Literal::from_code(v);
            self.successors(from).iter().map(move |&to| (from, to))
        })
    }

    /// Checks that `a -> b` and `~b -> ~a` occur with equal multiplicity for
    /// every edge.
    pub fn is_skew_symmetric(&self) -> bool {
        let mut counts: HashMap<(Literal, Literal), i64> = HashMap::new();
        for (a, b) in self.edges() {
            *counts.entry((a, b)).or_default() += 1;
            *counts.entry((b.negate(), a.negate())).or_default() -= 1;
        }
        counts.values().all(|&c| c == 0)
    }

    /// Strongly connected components by iterative Tarjan. Component ids are
    /// assigned in completion order, so every edge between components goes
    /// from a higher id to a lower (or equal) one.
    pub fn strongly_connected_components(&self) -> Vec<u32> {
        const UNSEEN: u32 = u32::MAX;
        let nv = self.vertex_count();
        let mut index = vec![UNSEEN; nv];
        let mut low = vec![0u32; nv];
        let mut comp = vec![UNSEEN; nv];
        let mut on_stack = vec![false; nv];
        let mut stack: Vec<u32> = Vec::new();
        // (vertex, next edge offset)
        let mut call: Vec<(u32, u32)> = Vec::new();
        let mut next_index = 0u32;
        let mut next_comp = 0u32;

        for root in 0..nv as u32 {
            if index[root as usize] != UNSEEN {
                continue;
            }
            call.push((root, self.offsets[root as usize]));
            index[root as usize] = next_index;
            low[root as usize] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root as usize] = true;

            while let Some(&mut (v, ref mut e)) = call.last_mut() {
                let vu = v as usize;
                if *e < self.offsets[vu + 1] {
                    let w = self.targets[*e as usize].code();
                    *e += 1;
                    let wu = w as usize;
                    if index[wu] == UNSEEN {
                        index[wu] = next_index;
                        low[wu] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[wu] = true;
                        call.push((w, self.offsets[wu]));
                    } else if on_stack[wu] {
                        low[vu] = low[vu].min(index[wu]);
                    }
                } else {
                    call.pop();
                    if low[vu] == index[vu] {
                        loop {
                            let w = stack.pop().expect("root still on stack");
                            on_stack[w as usize] = false;
                            comp[w as usize] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                    if let Some(&(parent, _)) = call.last() {
                        let pu = parent as usize;
                        low[pu] = low[pu].min(low[vu]);
                    }
                }
            }
        }
        comp
    }

    /// Graphviz DOT with vertex labels `x3` / `~x3`.
    pub fn write_dot<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "digraph implication {{")?;
        for v in 0..self.vertex_count() as u32 {
            let lit = Literal::from_code(v);
            writeln!(out, "  v{v} [label=\"{lit}\"];")?;
        }
        for (a, b) in self.edges() {
            writeln!(out, "  v{} -> v{};", a.code(), b.code())?;
        }
        writeln!(out, "}}")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{sample_clause, Clause};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2(n: usize, clauses: &[[i64; 2]]) -> Formula {
        Formula::with_clauses(
            n,
            2,
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_clause_edges() {
        let g = ImplicationGraph::from_formula(&f2(2, &[[1, 2]])).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges.len(), 2);
        assert!(g.has_edge(Literal::neg(1), Literal::pos(2)));
        assert!(g.has_edge(Literal::neg(2), Literal::pos(1)));
        assert_eq!(
            g.predecessors(Literal::pos(2)).collect::<Vec<_>>(),
            vec![Literal::neg(1)]
        );
    }

    #[test]
    fn empty_formula_isolated_vertices() {
        let g = ImplicationGraph::from_formula(&Formula::new(4, 2).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 0);
        let comp = g.strongly_connected_components();
        let mut ids = comp.clone();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 8);
    }

    #[test]
    fn edge_count_with_multiplicity() {
        let g = ImplicationGraph::from_formula(&f2(3, &[[1, 2], [1, 2], [-2, 3]])).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(
            g.successors(Literal::neg(1)),
            &[Literal::pos(2), Literal::pos(2)]
        );
    }

    #[test]
    fn rejects_width_three() {
        let f = Formula::new(3, 3).unwrap();
        assert!(ImplicationGraph::from_formula(&f).is_err());
    }

    #[test]
    fn scc_topological_numbering() {
        // x1 -> x2 -> x3 -> x2 cycle
        let f = f2(3, &[[-1, 2], [-2, 3], [-3, 2]]);
        let g = ImplicationGraph::from_formula(&f).unwrap();
        let comp = g.strongly_connected_components();
        let c = |l: Literal| comp[l.code() as usize];
        assert_eq!(c(Literal::pos(2)), c(Literal::pos(3)));
        assert_ne!(c(Literal::pos(1)), c(Literal::pos(2)));
        for (a, b) in g.edges() {
            assert!(c(a) >= c(b));
        }
    }

    #[test]
    fn dot_labels() {
        let g = ImplicationGraph::from_formula(&f2(2, &[[1, -2]])).unwrap();
        let mut buf = Vec::new();
        g.write_dot(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.contains("label=\"~x2\""));
        assert!(s.contains("v1 -> v3;"));
        assert!(s.contains("v2 -> v0;"));
    }

    proptest! {
        #[test]
        fn skew_symmetric(seed in any::<u64>(), n in 2usize..30, m in 0usize..80) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut f = Formula::new(n, 2).unwrap();
            for _ in 0..m {
                f.push(sample_clause(n, 2, &mut rng).unwrap()).unwrap();
            }
            let g = ImplicationGraph::from_formula(&f).unwrap();
            prop_assert_eq!(g.edge_count(), 2 * m);
            prop_assert!(g.is_skew_symmetric());
            for (a, b) in g.edges() {
                prop_assert!(g.has_edge(b.negate(), a.negate()));
            }
        }
    }
}
