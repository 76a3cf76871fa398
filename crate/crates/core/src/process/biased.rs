use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sat::sample::sample_clause_unchecked;
use crate::sat::{sample_distinct_vars, Clause, Formula, Literal};
use crate::{Error, Result};

/// Biased random 3-SAT: each clause independently is, with probability `p`,
/// uniform over all-positive 3-clauses and otherwise uniform over all
/// 3-clauses.
pub fn biased_3sat_sampler(n: usize, p: f64, steps: usize, seed: u64) -> Result<Formula> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::params(format!("bias p = {p} outside [0, 1]")));
    }
    if n < 3 {
        return Err(Error::params("biased 3-SAT needs n >= 3"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Formula::with_capacity_unchecked(n, 3, steps);
    let mut vars = Vec::with_capacity(3);
    for _ in 0..steps {
        let clause = if rng.random_bool(p) {
            sample_distinct_vars(n, 3, &mut rng, &mut vars);
            Clause::from_vec_unchecked(vars.iter().map(|&v| Literal::pos(v + 1)).collect())
        } else {
            sample_clause_unchecked(n, 3, &mut rng)
        };
        f.push_unchecked(clause);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::Assignment;
    use crate::stats::within_binomial_sigma;

    #[test]
    fn full_bias_is_satisfied_by_all_true() {
        let f = biased_3sat_sampler(30, 1.0, 500, 1).unwrap();
        assert!(f.clauses().iter().all(|c| c.positive_count() == 3));
        assert!(f.is_satisfied_by(&Assignment::all(30, true)));
    }

    #[test]
    fn no_bias_has_uniform_types() {
        let steps = 200_000;
        let f = biased_3sat_sampler(30, 0.0, steps, 2).unwrap();
        let all_pos = f
            .clauses()
            .iter()
            .filter(|c| c.positive_count() == 3)
            .count() as u64;
        assert!(within_binomial_sigma(all_pos, steps as u64, 0.125, 3.0));
    }

    #[test]
    fn half_bias_mixture() {
        // 1/2 + 1/2 * 1/8 = 9/16
        let steps = 1_000_000;
        let f = biased_3sat_sampler(30, 0.5, steps, 3).unwrap();
        let all_pos = f
            .clauses()
            .iter()
            .filter(|c| c.positive_count() == 3)
            .count() as u64;
        assert!(
            within_binomial_sigma(all_pos, steps as u64, 9.0 / 16.0, 3.0),
            "{all_pos}"
        );
    }

    #[test]
    fn rejects_bad_bias() {
        assert!(biased_3sat_sampler(10, 1.5, 5, 0).is_err());
        assert!(biased_3sat_sampler(10, -0.1, 5, 0).is_err());
    }
}
