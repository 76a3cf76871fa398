use std::time::Instant;

use super::{Assignment, Formula, Literal, Verdict};

/// Returned by [`dpll_with_deadline`] when the wall-clock budget runs out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("DPLL search exceeded its time budget")]
pub struct Timeout;

/// Sound and complete DPLL: unit propagation plus chronological
/// backtracking.
///
/// Branching is deterministic: a MOMS-style score over the shortest open
/// clauses picks the variable, and its more frequent polarity goes first.
pub fn dpll_satisfiable(f: &Formula) -> Verdict {
    Solver::new(f).solve(None).expect("no deadline, no timeout")
}

pub fn dpll_with_deadline(f: &Formula, deadline: Instant) -> Result<Verdict, Timeout> {
    Solver::new(f).solve(Some(deadline))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Conflict,
    /// No conflict; `assigned` variables are fixed after propagation.
    Consistent {
        assigned: usize,
    },
}

/// Asserts `assumptions` and runs unit propagation to a fixed point.
pub fn unit_propagate(f: &Formula, assumptions: &[Literal]) -> Propagation {
    let mut s = Solver::new(f);
    let mut ok = s.propagate();
    for &lit in assumptions {
        if !ok {
            break;
        }
        ok = match s.value(lit) {
            Some(true) => true,
            Some(false) => false,
            None => s.assign(lit) && s.propagate(),
        };
    }
    if ok {
        Propagation::Consistent {
            assigned: s.trail.len(),
        }
    } else {
        Propagation::Conflict
    }
}

const UNASSIGNED: i8 = -1;

struct Solver {
    starts: Vec<u32>,
    lits: Vec<Literal>,
    /// clause ids per literal code
    occurs: Vec<Vec<u32>>,
    values: Vec<i8>,
    sat_count: Vec<u32>,
    false_count: Vec<u32>,
    open_clauses: usize,
    trail: Vec<Literal>,
    pending_units: Vec<u32>,
    /// scratch for branching, per literal code
    counts: Vec<u32>,
}

impl Solver {
    fn new(f: &Formula) -> Self {
        let n = f.n();
        let m = f.len();
        let mut starts = Vec::with_capacity(m + 1);
        let mut lits = Vec::with_capacity(m * f.k());
        let mut occurs = vec![Vec::new(); 2 * n];
        let mut pending_units = Vec::new();
        starts.push(0);
        for (ci, c) in f.clauses().iter().enumerate() {
            for &l in c.literals() {
                lits.push(l);
                occurs[l.code() as usize].push(ci as u32);
            }
            starts.push(lits.len() as u32);
            if c.len() == 1 {
                pending_units.push(ci as u32);
            }
        }
        Solver {
            starts,
            lits,
            occurs,
            values: vec![UNASSIGNED; n],
            sat_count: vec![0; m],
            false_count: vec![0; m],
            open_clauses: m,
            trail: Vec::with_capacity(n),
            pending_units,
            counts: vec![0; 2 * n],
        }
    }

    #[inline]
    fn clause(&self, c: u32) -> &[Literal] {
        &self.lits[self.starts[c as usize] as usize..self.starts[c as usize + 1] as usize]
    }

    #[inline]
    fn value(&self, lit: Literal) -> Option<bool> {
        match self.values[lit.var_index()] {
            UNASSIGNED => None,
            v => Some((v == 1) == lit.is_positive()),
        }
    }

    /// Makes `lit` true. Returns false if some clause became fully false.
    fn assign(&mut self, lit: Literal) -> bool {
        debug_assert!(self.value(lit).is_none());
        self.values[lit.var_index()] = i8::from(lit.is_positive());
        self.trail.push(lit);
        for &c in &self.occurs[lit.code() as usize] {
            let s = &mut self.sat_count[c as usize];
            *s += 1;
            if *s == 1 {
                self.open_clauses -= 1;
            }
        }
        let mut ok = true;
        for &c in &self.occurs[lit.negate().code() as usize] {
            let ci = c as usize;
            self.false_count[ci] += 1;
            if self.sat_count[ci] == 0 {
                let len = self.starts[ci + 1] - self.starts[ci];
                if self.false_count[ci] == len {
                    ok = false;
                } else if self.false_count[ci] + 1 == len {
                    self.pending_units.push(c);
                }
            }
        }
        ok
    }

    fn propagate(&mut self) -> bool {
        while let Some(c) = self.pending_units.pop() {
            if self.sat_count[c as usize] > 0 {
                continue;
            }
            let unit = self
                .clause(c)
                .iter()
                .copied()
                .find(|&l| self.value(l).is_none());
            let ok = match unit {
                Some(l) => self.assign(l),
                None => false,
            };
            if !ok {
                self.pending_units.clear();
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let lit = self.trail.pop().expect("trail longer than len");
            self.values[lit.var_index()] = UNASSIGNED;
            for &c in &self.occurs[lit.code() as usize] {
                let s = &mut self.sat_count[c as usize];
                *s -= 1;
                if *s == 0 {
                    self.open_clauses += 1;
                }
            }
            for &c in &self.occurs[lit.negate().code() as usize] {
                self.false_count[c as usize] -= 1;
            }
        }
        self.pending_units.clear();
    }

    /// MOMS-style choice: count free literal occurrences in the open
    /// clauses of minimum free length, take the variable maximising
    /// `pos * neg` (then `pos + neg`, then lowest index) and try the more
    /// frequent polarity first, `true` on ties.
    fn pick_branch(&mut self) -> Option<Literal> {
        let mut best_len = u32::MAX;
        for ci in 0..self.sat_count.len() {
            if self.sat_count[ci] == 0 {
                let free = self.starts[ci + 1] - self.starts[ci] - self.false_count[ci];
                best_len = best_len.min(free);
            }
        }
        if best_len == u32::MAX {
            return None;
        }
        self.counts.iter_mut().for_each(|c| *c = 0);
        for ci in 0..self.sat_count.len() {
            if self.sat_count[ci] != 0
                || self.starts[ci + 1] - self.starts[ci] - self.false_count[ci] != best_len
            {
                continue;
            }
            let (a, b) = (self.starts[ci] as usize, self.starts[ci + 1] as usize);
            for &l in &self.lits[a..b] {
                if self.values[l.var_index()] == UNASSIGNED {
                    self.counts[l.code() as usize] += 1;
                }
            }
        }
        let mut best: Option<(u64, usize)> = None;
        for v in 0..self.values.len() {
            let (p, q) = (self.counts[2 * v] as u64, self.counts[2 * v + 1] as u64);
            if p + q == 0 {
                continue;
            }
            let score = (p * q) << 20 | (p + q);
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, v));
            }
        }
        let (_, v) = best?;
        let positive = self.counts[2 * v] >= self.counts[2 * v + 1];
        Some(Literal::new(v as u32 + 1, positive))
    }

    fn solve(mut self, deadline: Option<Instant>) -> Result<Verdict, Timeout> {
        if !self.propagate() {
            return Ok(Verdict::Unsat);
        }
        // (decision literal, trail length before it, already flipped)
        let mut decisions: Vec<(Literal, usize, bool)> = Vec::new();
        let mut steps = 0u64;
        loop {
            if self.open_clauses == 0 {
                let values = self.values.iter().map(|&v| v == 1).collect();
                return Ok(Verdict::Sat(Assignment::new(values)));
            }
            steps += 1;
            if steps.is_multiple_of(256) {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return Err(Timeout);
                    }
                }
            }
            let lit = self
                .pick_branch()
                .expect("an open clause with no free literal would have conflicted");
            let mark = self.trail.len();
            decisions.push((lit, mark, false));
            let mut ok = self.assign(lit) && self.propagate();
            while !ok {
                let Some((lit, mark, flipped)) = decisions.pop() else {
                    return Ok(Verdict::Unsat);
                };
                self.undo_to(mark);
                if !flipped {
                    decisions.push((lit, mark, true));
                    ok = self.assign(!lit) && self.propagate();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::{brute_force_satisfiable, sample_clause, Clause};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_patterns(k: usize) -> Formula {
        let clauses = (0..1u32 << k)
            .map(|bits| {
                Clause::new(
                    (0..k)
                        .map(|i| Literal::new(i as u32 + 1, bits >> i & 1 == 1))
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        Formula::with_clauses(k + 2, k, clauses).unwrap()
    }

    #[test]
    fn empty_formula_is_sat() {
        assert!(dpll_satisfiable(&Formula::new(4, 3).unwrap()).is_sat());
    }

    #[test]
    fn all_patterns_unsat() {
        for k in 1..=4 {
            assert_eq!(dpll_satisfiable(&all_patterns(k)), Verdict::Unsat);
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut sat = 0;
        for _ in 0..10_000 {
            let m = rng.random_range(1..=60);
            let mut f = Formula::new(10, 3).unwrap();
            for _ in 0..m {
                f.push(sample_clause(10, 3, &mut rng).unwrap()).unwrap();
            }
            let want = brute_force_satisfiable(&f).unwrap();
            let got = dpll_satisfiable(&f);
            assert_eq!(want.is_sat(), got.is_sat(), "{f:?}");
            if let Some(w) = got.witness() {
                assert!(f.is_satisfied_by(w));
                sat += 1;
            }
        }
        // the sample must cover both outcomes
        assert!(sat > 1000 && sat < 9000, "sat = {sat}");
    }

    #[test]
    fn deterministic_witness() {
        let f = Formula::with_clauses(
            3,
            2,
            vec![
                Clause::from_dimacs(&[-1, 2]),
                Clause::from_dimacs(&[-2, -3]),
            ],
        )
        .unwrap();
        // x2 occurs in both polarities, so it is branched on (true first),
        // which forces ~x3; x1 is never assigned and reads false
        let w = dpll_satisfiable(&f);
        assert_eq!(w.witness().unwrap().values(), &[false, true, false]);
    }

    #[test]
    fn unit_propagation_detects_conflict() {
        let f = Formula::with_clauses(
            3,
            2,
            vec![
                Clause::from_dimacs(&[-1, 2]),
                Clause::from_dimacs(&[-1, -2]),
            ],
        )
        .unwrap();
        assert_eq!(
            unit_propagate(&f, &[Literal::pos(1)]),
            Propagation::Conflict
        );
        assert_eq!(
            unit_propagate(&f, &[Literal::neg(1)]),
            Propagation::Consistent { assigned: 1 }
        );
        assert_eq!(
            unit_propagate(&f, &[Literal::pos(2)]),
            Propagation::Consistent { assigned: 2 }
        );
    }

    #[test]
    fn expired_deadline_times_out() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut f = Formula::new(150, 3).unwrap();
        for _ in 0..640 {
            f.push(sample_clause(150, 3, &mut rng).unwrap()).unwrap();
        }
        let past = Instant::now();
        // either finished within the first 256 decisions or timed out
        if let Ok(v) = dpll_with_deadline(&f, past) {
            assert_eq!(v.is_sat(), dpll_satisfiable(&f).is_sat());
        }
    }
}
