use super::{Assignment, Formula, Verdict};
use crate::{Error, Result};

/// Largest `n` accepted by [`brute_force_satisfiable`].
pub const BRUTE_FORCE_MAX_VARS: usize = 24;

/// Exhaustive scan over all `2^n` assignments, in increasing bit order.
///
/// This is the ground-truth oracle the other deciders are checked against.
pub fn brute_force_satisfiable(f: &Formula) -> Result<Verdict> {
    let n = f.n();
    if n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_VARS,
        });
    }
    let masks: Vec<(u32, u32)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0u32, 0u32), |(pos, neg), l| {
                let bit = 1u32 << l.var_index();
                if l.is_positive() {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect();
    let found = (0u32..(1u32 << n)).find(|&x| {
        masks
            .iter()
            .all(|&(pos, neg)| (x & pos) != 0 || (!x & neg) != 0)
    });
    Ok(match found {
        Some(x) => Verdict::Sat(Assignment::from_bits(n, u64::from(x))),
        None => Verdict::Unsat,
    })
}
