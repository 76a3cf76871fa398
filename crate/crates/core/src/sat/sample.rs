use rand::Rng;

use super::{Clause, Literal};
use crate::{Error, Result};

/// Draws `k` distinct 0-based variable indices from `0..n`, uniformly over
/// ordered tuples, writing them into `out`.
pub fn sample_distinct_vars<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R, out: &mut Vec<u32>) {
    out.clear();
    if k <= 8 && 2 * k <= n {
        // Rejection is cheap while the clause is short relative to n.
        while out.len() < k {
            let v = rng.random_range(0..n as u32);
            if !out.contains(&v) {
                out.push(v);
            }
        }
    } else {
        out.extend(
            rand::seq::index::sample(rng, n, k)
                .into_iter()
                .map(|v| v as u32),
        );
    }
}

/// A uniformly random k-clause over `n` variables: `k` distinct variables in
/// sampled order, each with an independent fair polarity.
pub fn sample_clause<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Clause> {
    if k == 0 || k > n {
        return Err(Error::params(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    Ok(sample_clause_unchecked(n, k, rng))
}

pub(crate) fn sample_clause_unchecked<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Clause {
    let mut vars = Vec::with_capacity(k);
    sample_distinct_vars(n, k, rng, &mut vars);
    let lits = vars
        .into_iter()
        .map(|v| Literal::new(v + 1, rng.random::<bool>()))
        .collect();
    Clause::from_vec_unchecked(lits)
}
