use std::io::Write;

use serde::Serialize;

use crate::{Error, Result};

/// Best known upper bound on the random 3-SAT threshold.
pub const RANDOM_3SAT_UPPER_BOUND: f64 = 4.508;
/// Best known lower bound on the random 3-SAT threshold.
pub const RANDOM_3SAT_LOWER_BOUND: f64 = 3.52;

/// `2^k ln 2`, the first-moment upper bound on the random k-SAT threshold.
pub fn first_moment_upper_bound(k: usize) -> f64 {
    2f64.powi(k as i32) * std::f64::consts::LN_2
}

fn check_kl(k: usize, l: usize) -> Result<()> {
    if k < 2 || l < 1 {
        return Err(Error::params(format!(
            "need k >= 2 and l >= 1, got k = {k}, l = {l}"
        )));
    }
    if k > 1000 || l > 100_000 {
        return Err(Error::params(format!(
            "k = {k}, l = {l} out of supported range"
        )));
    }
    Ok(())
}

/// Probabilities that a clause kept by the majority-positive rule reduces to
/// a 2-clause with 0, 1 or 2 positive literals.
///
/// With `a = (k+1)/2^k = P[Bin(k, 1/2) <= 1]`:
/// `p0 = a^(l-1) / 2^k`, `p1 = a^(l-1) k / 2^k`, `p2 = 1 - a^l`.
pub fn clause_type_probs(k: usize, l: usize) -> Result<(f64, f64, f64)> {
    check_kl(k, l)?;
    let two_k = 2f64.powi(k as i32);
    let a = (k as f64 + 1.0) / two_k;
    let lead = a.powi(l as i32 - 1);
    let p0 = lead / two_k;
    let p1 = lead * k as f64 / two_k;
    let p2 = 1.0 - a.powi(l as i32);
    Ok((p0, p1, p2))
}

/// `r(k, l) = 1 / (p1 + 2 sqrt(p0 p2))`.
pub fn r_threshold(k: usize, l: usize) -> Result<f64> {
    let (p0, p1, p2) = clause_type_probs(k, l)?;
    Ok(1.0 / (p1 + 2.0 * (p0 * p2).sqrt()))
}

/// The same threshold written out directly in `k` and `l`, without going
/// through [`clause_type_probs`].
pub fn r_threshold_expanded(k: usize, l: usize) -> Result<f64> {
    check_kl(k, l)?;
    let kf = k as f64;
    let inv = 0.5f64.powi(k as i32);
    let base = (kf + 1.0) * inv;
    let pow_lm1 = base.powi(l as i32 - 1);
    let denom = pow_lm1 * kf * inv + 2.0 * (pow_lm1 * inv * (1.0 - base.powi(l as i32))).sqrt();
    Ok(1.0 / denom)
}

/// Inclusion probabilities `(q0, q1, q2) = (2 p0 r / n, p1 r / n, 2 p2 r / n)`
/// of the binomial 2-SAT model matching `r n` reduced clauses.
pub fn q_probs(k: usize, l: usize, r: f64, n: usize) -> Result<(f64, f64, f64)> {
    if !(r >= 0.0) || n == 0 {
        return Err(Error::params(format!(
            "need r >= 0 and n >= 1, got r = {r}, n = {n}"
        )));
    }
    let (p0, p1, p2) = clause_type_probs(k, l)?;
    let nf = n as f64;
    Ok((2.0 * p0 * r / nf, p1 * r / nf, 2.0 * p2 * r / nf))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdParams {
    pub k: usize,
    pub l: usize,
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub r_kl: f64,
    pub upper_bound_2k_ln2: f64,
    /// `r_kl - 2^k ln 2`; positive means the shifted threshold provably
    /// exceeds the classic one.
    pub margin: f64,
}

impl ThresholdParams {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        let (p0, p1, p2) = clause_type_probs(k, l)?;
        let r_kl = 1.0 / (p1 + 2.0 * (p0 * p2).sqrt());
        let ub = first_moment_upper_bound(k);
        Ok(ThresholdParams {
            k,
            l,
            p0,
            p1,
            p2,
            r_kl,
            upper_bound_2k_ln2: ub,
            margin: r_kl - ub,
        })
    }
}

pub fn threshold_table(ks: &[usize], ls: &[usize]) -> Result<Vec<ThresholdParams>> {
    let mut rows = Vec::with_capacity(ks.len() * ls.len());
    for &k in ks {
        for &l in ls {
            rows.push(ThresholdParams::new(k, l)?);
        }
    }
    Ok(rows)
}

/// CSV columns: `k,l,p0,p1,p2,r_kl,upper_bound_2k_ln2,margin`.
pub fn write_threshold_csv<W: Write>(rows: &[ThresholdParams], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    if rows.is_empty() {
        w.write_record([
            "k",
            "l",
            "p0",
            "p1",
            "p2",
            "r_kl",
            "upper_bound_2k_ln2",
            "margin",
        ])?;
    }
    w.flush()?;
    Ok(())
}
