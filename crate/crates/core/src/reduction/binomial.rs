use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sat::{Clause, Formula, Literal};
use crate::threshold::q_probs;
use crate::{Error, Result};

/// Inclusion probabilities of the independent-clause 2-SAT model: each of
/// the `C(n,2)` positive-positive clauses with `q2`, each of the `n(n-1)`
/// mixed clauses with `q1` and each of the `C(n,2)` negative-negative clauses
/// with `q0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomialTwoSatParams {
    pub n: usize,
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
}

impl BinomialTwoSatParams {
    pub fn new(n: usize, q0: f64, q1: f64, q2: f64) -> Result<Self> {
        for (name, q) in [("q0", q0), ("q1", q1), ("q2", q2)] {
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::params(format!("{name} = {q} is not a probability")));
            }
        }
        if n < 2 {
            return Err(Error::params("the binomial 2-SAT model needs n >= 2"));
        }
        Ok(BinomialTwoSatParams { n, q0, q1, q2 })
    }

    /// `q2 = 2 p2 r / n`, `q1 = p1 r / n`, `q0 = 2 p0 r / n` for the
    /// clause-type mix produced by the majority-positive rule.
    pub fn for_rule(k: usize, l: usize, r: f64, n: usize) -> Result<Self> {
        let (q0, q1, q2) = q_probs(k, l, r, n)?;
        Self::new(n, q0, q1, q2)
    }

    /// Expected number of clauses, `C(n,2)(q0 + q2) + n(n-1) q1`.
    pub fn expected_clauses(&self) -> f64 {
        let pairs = self.n as f64 * (self.n as f64 - 1.0) / 2.0;
        pairs * (self.q0 + self.q2) + 2.0 * pairs * self.q1
    }

    /// Variance of the clause count (a sum of independent indicators).
    pub fn clause_count_variance(&self) -> f64 {
        let pairs = self.n as f64 * (self.n as f64 - 1.0) / 2.0;
        let v = |q: f64| q * (1.0 - q);
        pairs * (v(self.q0) + v(self.q2)) + 2.0 * pairs * v(self.q1)
    }

    /// Draws a formula; clauses appear as positive-positive, then mixed, then
    /// negative-negative, each block in lexicographic slot order. No clause
    /// slot is used twice.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let n = self.n as u64;
        let pairs = n * (n - 1) / 2;
        let expect = self.expected_clauses().ceil() as usize;
        let mut f = Formula::with_capacity_unchecked(self.n, 2, expect + expect / 8 + 16);

        let mut tri = TriangularCursor::new(n);
        for_each_success(pairs, self.q2, rng, |s| {
            let (i, j) = tri.unrank(s);
            f.push_unchecked(pair(i, true, j, true));
        });
        for_each_success(n * (n - 1), self.q1, rng, |s| {
            let i = s / (n - 1);
            let jj = s % (n - 1);
            let j = if jj < i { jj } else { jj + 1 };
            f.push_unchecked(pair(i, true, j, false));
        });
        let mut tri = TriangularCursor::new(n);
        for_each_success(pairs, self.q0, rng, |s| {
            let (i, j) = tri.unrank(s);
            f.push_unchecked(pair(i, false, j, false));
        });
        f
    }
}

/// Seeded convenience wrapper around [`BinomialTwoSatParams::sample`].
pub fn sample_binomial_2sat(params: &BinomialTwoSatParams, seed: u64) -> Formula {
    params.sample(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn pair(i: u64, pi: bool, j: u64, pj: bool) -> Clause {
    Clause::from_vec_unchecked(vec![
        Literal::new(i as u32 + 1, pi),
        Literal::new(j as u32 + 1, pj),
    ])
}

/// Calls `emit` on the indices in `0..total` that succeed in independent
/// Bernoulli(q) trials, jumping over failures with geometric gaps.
fn for_each_success<R: Rng + ?Sized>(total: u64, q: f64, rng: &mut R, mut emit: impl FnMut(u64)) {
    if q <= 0.0 || total == 0 {
        return;
    }
    if q >= 1.0 {
        (0..total).for_each(emit);
        return;
    }
    let log_fail = (-q).ln_1p();
    let mut pos: u64 = 0;
    loop {
        // U in (0, 1]
        let u: f64 = 1.0 - rng.random::<f64>();
        let gap = (u.ln() / log_fail).floor();
        if gap >= (total - pos) as f64 {
            return;
        }
        pos += gap as u64;
        emit(pos);
        pos += 1;
        if pos >= total {
            return;
        }
    }
}

/// Maps increasing slot indices to pairs `(i, j)`, `i < j`, in lexicographic
/// order.
struct TriangularCursor {
    n: u64,
    row: u64,
    row_start: u64,
}

impl TriangularCursor {
    fn new(n: u64) -> Self {
        TriangularCursor {
            n,
            row: 0,
            row_start: 0,
        }
    }

    fn unrank(&mut self, slot: u64) -> (u64, u64) {
        debug_assert!(slot >= self.row_start);
        loop {
            let row_len = self.n - 1 - self.row;
            if slot < self.row_start + row_len {
                return (self.row, self.row + 1 + (slot - self.row_start));
            }
            self.row_start += row_len;
            self.row += 1;
        }
    }
}
