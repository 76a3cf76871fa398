//! First-moment curves for biased random 3-SAT.
//!
//! Each clause is, with probability `p`, uniform over all-positive 3-clauses
//! and otherwise uniform over all 3-clauses. For the assignment with a
//! `beta` fraction of true variables,
//!
//! ```text
//! (1/n) ln E[Z_beta] -> H(beta) + r ln(p (1 - (1 - beta)^3) + (1 - p) 7/8)
//! ```
//!
//! and a positive maximum over `beta` means exponentially many satisfying
//! assignments in expectation. The comparison is against 0 with natural
//! logarithms throughout.

use serde::Serialize;

use crate::{Error, Result};

/// Grid points used to bracket the maximiser before golden-section refinement.
const GRID: usize = 2048;
const GOLDEN_TOL: f64 = 1e-10;

/// Binary entropy in nats; `H(0) = H(1) = 0`.
pub fn binary_entropy(beta: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.ln() };
    term(beta) + term(1.0 - beta)
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::params(format!("bias p = {p} outside [0, 1]")));
    }
    Ok(())
}

#[inline]
fn exponent_unchecked(beta: f64, r: f64, p: f64) -> f64 {
    let sat = p * (1.0 - (1.0 - beta).powi(3)) + (1.0 - p) * 0.875;
    binary_entropy(beta) + r * sat.ln()
}

/// `H(beta) + r ln(p (1 - (1 - beta)^3) + (1 - p) 7/8)`.
pub fn first_moment_exponent(beta: f64, r: f64, p: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::params(format!("beta = {beta} outside (0, 1)")));
    }
    if !(r >= 0.0) {
        return Err(Error::params(format!("density r = {r} must be >= 0")));
    }
    check_p(p)?;
    Ok(exponent_unchecked(beta, r, p))
}

/// The exponent as a function of `beta` for fixed `(p, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FirstMomentCurve {
    pub p: f64,
    pub r: f64,
}

impl FirstMomentCurve {
    pub fn new(p: f64, r: f64) -> Result<Self> {
        check_p(p)?;
        if !(r >= 0.0) {
            return Err(Error::params(format!("density r = {r} must be >= 0")));
        }
        Ok(FirstMomentCurve { p, r })
    }

    pub fn exponent(&self, beta: f64) -> Result<f64> {
        first_moment_exponent(beta, self.r, self.p)
    }

    /// `(beta*, max exponent)`: dense grid to bracket, golden section to
    /// refine.
    pub fn maximum(&self) -> (f64, f64) {
        let f = |b: f64| exponent_unchecked(b, self.r, self.p);
        let h = 1.0 / GRID as f64;
        let (best_i, _) =
            (1..GRID)
                .map(|i| (i, f(i as f64 * h)))
                .fold(
                    (1, f64::NEG_INFINITY),
                    |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
                );
        // bracket strictly inside (0, 1)
        let a = ((best_i - 1) as f64 * h).max(f64::EPSILON);
        let b = ((best_i + 1) as f64 * h).min(1.0 - f64::EPSILON);
        let (beta, value) = golden_max(f, a, b);
        let grid_beta = best_i as f64 * h;
        let grid_value = f(grid_beta);
        if grid_value > value {
            (grid_beta, grid_value)
        } else {
            (beta, value)
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let beta = 0.5 * (a + b);
    (beta, f(beta))
}

/// Maximiser and maximum of the exponent over `beta in (0, 1)`.
pub fn max_first_moment(r: f64, p: f64) -> Result<(f64, f64)> {
    Ok(FirstMomentCurve::new(p, r)?.maximum())
}

/// `sup { r : max_beta exponent > 0 }`, by bisection to `1e-8`. The maximum
/// is strictly decreasing in `r`, so the set is an interval from 0.
pub fn first_moment_critical_r(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::params(format!("bias p = {p} outside [0, 1)")));
    }
    let positive = |r: f64| FirstMomentCurve { p, r }.maximum().1 > 0.0;
    let mut lo = 0.0;
    let mut hi = 8.0;
    while positive(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::params(format!(
                "no finite critical density for p = {p}"
            )));
        }
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if positive(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grid step for [`bias_for_density`].
pub const BIAS_GRID_STEP: f64 = 1e-4;

/// The least `p` on the `1e-4` grid in `[0, 1)` whose first-moment exponent
/// has a positive maximum at density `r`.
///
/// For `beta >= 1/2` the clause-satisfaction probability is nondecreasing in
/// `p`, and the maximum over `beta` is always attained there, so positivity
/// is monotone in `p` and a binary search over grid indices finds the least
/// one.
pub fn bias_for_density(r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::params(format!("density r = {r} must be > 0")));
    }
    let steps = (1.0 / BIAS_GRID_STEP).round() as usize;
    let p_at = |i: usize| i as f64 * BIAS_GRID_STEP;
    let positive = |i: usize| FirstMomentCurve { p: p_at(i), r }.maximum().1 > 0.0;
    let (mut lo, mut hi) = (0usize, steps - 1);
    if !positive(hi) {
        return Err(Error::NotFound { r });
    }
    if positive(lo) {
        return Ok(p_at(lo));
    }
    // invariant: !positive(lo) && positive(hi)
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if positive(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(p_at(hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn entropy() {
        assert!((binary_entropy(0.5) - LN_2).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert!((binary_entropy(0.2) - binary_entropy(0.8)).abs() < 1e-15);
    }

    #[test]
    fn unbiased_maximum_at_half() {
        let r = 3.0;
        let (beta, value) = max_first_moment(r, 0.0).unwrap();
        assert!((beta - 0.5).abs() < 1e-6);
        assert!((value - (LN_2 + r * (7.0f64 / 8.0).ln())).abs() < 1e-12);
    }

    #[test]
    fn zero_density_is_pure_entropy() {
        for p in [0.0, 0.3, 1.0] {
            let (beta, value) = max_first_moment(0.0, p).unwrap();
            assert!((beta - 0.5).abs() < 1e-6);
            assert!((value - LN_2).abs() < 1e-12);
        }
    }

    #[test]
    fn full_bias_near_one() {
        for r in [1.0, 100.0, 1e4] {
            assert!(first_moment_exponent(0.999, r, 1.0).unwrap() > 0.0);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(first_moment_exponent(0.0, 1.0, 0.5).is_err());
        assert!(first_moment_exponent(1.0, 1.0, 0.5).is_err());
        assert!(first_moment_exponent(0.5, 1.0, 1.5).is_err());
        assert!(first_moment_critical_r(1.0).is_err());
        assert!(bias_for_density(0.0).is_err());
    }

    #[test]
    fn critical_density_unbiased() {
        let want = LN_2 / (8.0f64 / 7.0).ln();
        let got = first_moment_critical_r(0.0).unwrap();
        assert!((got - 5.19089).abs() < 1e-4, "got {got}");
        assert!((got - want).abs() < 1e-7);
    }

    #[test]
    fn critical_density_nondecreasing_in_bias() {
        let mut prev = 0.0;
        for i in 0..10 {
            let c = first_moment_critical_r(i as f64 / 10.0).unwrap();
            assert!(c >= prev, "p = {}", i as f64 / 10.0);
            prev = c;
        }
    }

    #[test]
    fn max_decreasing_in_density() {
        for p in [0.0, 0.25, 0.5, 0.9] {
            let mut prev = f64::INFINITY;
            for i in 0..40 {
                let v = max_first_moment(i as f64 * 0.5, p).unwrap().1;
                assert!(v < prev);
                prev = v;
            }
        }
    }

    #[test]
    fn bias_search_is_least_on_grid() {
        for r in [6.0, 10.0, 100.0] {
            let p = bias_for_density(r).unwrap();
            assert!(p > 0.0 && p < 1.0);
            assert!(max_first_moment(r, p).unwrap().1 > 0.0);
            assert!(max_first_moment(r, p - BIAS_GRID_STEP).unwrap().1 <= 0.0);
        }
        // below the unbiased bound no bias is needed
        assert_eq!(bias_for_density(4.0).unwrap(), 0.0);
    }
}
