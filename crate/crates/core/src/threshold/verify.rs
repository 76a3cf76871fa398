use serde::Serialize;

use super::{
    clause_type_probs, first_moment_upper_bound, r_threshold, r_threshold_expanded,
    RANDOM_3SAT_UPPER_BOUND,
};

/// A single numeric gate with the slack by which it passed (or failed).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub margin: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftReport {
    pub items: Vec<Check>,
}

impl ShiftReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }
}

fn r(k: usize, l: usize) -> f64 {
    r_threshold(k, l).expect("k >= 2, l >= 1")
}

fn g(k: usize) -> f64 {
    first_moment_upper_bound(k) / r(k, 3)
}

/// The four numeric conditions showing that the majority-positive rule
/// pushes the threshold past known upper bounds:
///
/// 1. `r(3,5)` exceeds the 4.508 upper bound for random 3-SAT;
/// 2. `r(k,5) >= 2^k ln 2` for `k = 4, 5, 6`;
/// 3. `r(7,3) > 2^7 ln 2`;
/// 4. `g(k) = 2^k ln 2 / r(k,3)` is strictly decreasing on `7..=64`.
pub fn verify_shift_conditions() -> ShiftReport {
    let mut items = Vec::with_capacity(4);

    let r35 = r(3, 5);
    items.push(Check {
        name: "r(3,5) > 4.508".into(),
        passed: r35 > RANDOM_3SAT_UPPER_BOUND,
        margin: r35 - RANDOM_3SAT_UPPER_BOUND,
        detail: format!("r(3,5) = {r35:.6}"),
    });

    let margins: Vec<(usize, f64)> = (4..=6)
        .map(|k| (k, r(k, 5) - first_moment_upper_bound(k)))
        .collect();
    let worst = margins
        .iter()
        .map(|&(_, m)| m)
        .fold(f64::INFINITY, f64::min);
    items.push(Check {
        name: "r(k,5) >= 2^k ln 2 for k in {4,5,6}".into(),
        passed: margins.iter().all(|&(_, m)| m >= 0.0),
        margin: worst,
        detail: margins
            .iter()
            .map(|&(k, _)| {
                format!(
                    "r({k},5) = {:.4} vs {:.4}",
                    r(k, 5),
                    first_moment_upper_bound(k)
                )
            })
            .collect::<Vec<_>>()
            .join("; "),
    });

    let r73 = r(7, 3);
    let ub7 = first_moment_upper_bound(7);
    items.push(Check {
        name: "r(7,3) > 2^7 ln 2".into(),
        passed: r73 > ub7,
        margin: r73 - ub7,
        detail: format!("r(7,3) = {r73:.6} vs {ub7:.6}"),
    });

    let drops: Vec<f64> = (7..64).map(|k| g(k) - g(k + 1)).collect();
    let min_drop = drops.iter().copied().fold(f64::INFINITY, f64::min);
    items.push(Check {
        name: "g(k) = 2^k ln 2 / r(k,3) strictly decreasing on [7, 64]".into(),
        passed: drops.iter().all(|&d| d > 0.0),
        margin: min_drop,
        detail: format!(
            "g(7) = {:.6}, g(8) = {:.6}, g(64) = {:.3e}",
            g(7),
            g(8),
            g(64)
        ),
    });

    ShiftReport { items }
}

/// Internal consistency of the threshold formulas over `k in [2,64]`,
/// `l in [1,10]`.
pub fn formula_self_checks() -> Vec<Check> {
    let grid = || (2..=64usize).flat_map(|k| (1..=10usize).map(move |l| (k, l)));

    let max_sum_err = grid()
        .map(|(k, l)| {
            let (p0, p1, p2) = clause_type_probs(k, l).expect("valid grid");
            (p0 + p1 + p2 - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let max_form_err = grid()
        .map(|(k, l)| {
            let a = r(k, l);
            let b = r_threshold_expanded(k, l).expect("valid grid");
            ((a - b) / a).abs()
        })
        .fold(0.0, f64::max);
    let min_l_step = grid()
        .filter(|&(_, l)| l > 1)
        .map(|(k, l)| r(k, l) / r(k, l - 1) - 1.0)
        .fold(f64::INFINITY, f64::min);
    let r21 = r(2, 1);

    vec![
        Check {
            name: "p0 + p1 + p2 = 1".into(),
            passed: max_sum_err <= 1e-12,
            margin: 1e-12 - max_sum_err,
            detail: format!("max |sum - 1| = {max_sum_err:.3e}"),
        },
        Check {
            name: "compact and expanded r(k,l) agree".into(),
            passed: max_form_err <= 1e-12,
            margin: 1e-12 - max_form_err,
            detail: format!("max relative difference = {max_form_err:.3e}"),
        },
        Check {
            name: "r(k,l) strictly increasing in l".into(),
            passed: min_l_step > 0.0,
            margin: min_l_step,
            detail: format!("smallest relative step = {min_l_step:.3e}"),
        },
        Check {
            name: "r(2,1) = 1".into(),
            passed: (r21 - 1.0).abs() <= 1e-12,
            margin: 1e-12 - (r21 - 1.0).abs(),
            detail: format!("r(2,1) = {r21}"),
        },
    ]
}
