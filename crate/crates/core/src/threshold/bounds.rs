//! Expectation bounds on long implication paths and on bicycles in the
//! binomial 2-SAT model, evaluated in log space.

use serde::Serialize;

use super::clause_type_probs;
use crate::{Error, Result};

/// A bound carried as its natural log; `value` is `exp(log)` and may be
/// `inf` when the linear value overflows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub log: f64,
    pub value: f64,
}

impl BoundValue {
    fn from_log(log: f64) -> Self {
        BoundValue {
            log,
            value: log.exp(),
        }
    }

    /// The linear value when it is finite.
    pub fn linear(&self) -> Option<f64> {
        self.value.is_finite().then_some(self.value)
    }
}

/// `ceil(K ln n / eps)`, the path length used for the vanishing-expectation
/// checks, with `K = 40`.
pub fn path_length_for(n: f64, eps: f64) -> usize {
    (40.0 * n.ln() / eps).ceil() as usize
}

fn common(n: f64, r: f64, k: usize, l: usize) -> Result<(f64, f64, f64)> {
    if !(n >= 1.0) || !(r >= 0.0) {
        return Err(Error::params(format!(
            "need n >= 1 and r >= 0, got n = {n}, r = {r}"
        )));
    }
    let (p0, p1, p2) = clause_type_probs(k, l)?;
    if p0 <= 0.0 {
        return Err(Error::params("p0 underflows to zero"));
    }
    // ln sqrt(p2/p0), ln(p1 + 2 sqrt(p0 p2))
    let half_ratio = 0.5 * (p2.ln() - p0.ln());
    let base = (p1 + 2.0 * (p0 * p2).sqrt()).ln();
    Ok((half_ratio, base, r.ln()))
}

/// Upper bound on the expected number of directed paths of length `len` in
/// the implication graph:
/// `2 n sqrt(p2/p0) r^(len-1) (p1 + 2 sqrt(p0 p2))^(len-1)`.
pub fn expected_paths_bound(n: f64, len: usize, r: f64, k: usize, l: usize) -> Result<BoundValue> {
    if len < 1 {
        return Err(Error::params("path length must be at least 1"));
    }
    let (half_ratio, base, ln_r) = common(n, r, k, l)?;
    let mut log = (2.0 * n).ln() + half_ratio;
    if len > 1 {
        log += (len - 1) as f64 * (ln_r + base);
    }
    Ok(BoundValue::from_log(log))
}

/// Upper bound on the expected number of bicycles of length at most
/// `max_len`:
/// `(8/n) sqrt(p2/p0) sum_{t=2}^{max_len} t^2 r^(t+1) (p1 + 2 sqrt(p0 p2))^(t-1)`.
///
/// The sum is accumulated with a running log-sum-exp.
pub fn expected_bicycles_bound(
    n: f64,
    max_len: usize,
    r: f64,
    k: usize,
    l: usize,
) -> Result<BoundValue> {
    if max_len < 2 {
        return Err(Error::params("bicycle length bound must be at least 2"));
    }
    let (half_ratio, base, ln_r) = common(n, r, k, l)?;
    if r == 0.0 {
        return Ok(BoundValue::from_log(f64::NEG_INFINITY));
    }
    let mut acc = f64::NEG_INFINITY;
    for t in 2..=max_len {
        let tf = t as f64;
        let term = 2.0 * tf.ln() + (tf + 1.0) * ln_r + (tf - 1.0) * base;
        acc = log_add(acc, term);
    }
    Ok(BoundValue::from_log((8.0 / n).ln() + half_ratio + acc))
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}
