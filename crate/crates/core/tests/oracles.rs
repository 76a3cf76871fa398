use achlioptas_core::gap::{
    adversary_library, score_decider, DeciderSpec, GapProblemSpec, DEFAULT_BUDGET,
};
use achlioptas_core::process::{monte_carlo_sat_fraction, Decider, MonteCarloConfig, RuleSpec};
use achlioptas_core::reduction::{sample_binomial_2sat, BinomialTwoSatParams};
use achlioptas_core::threshold::{clause_type_probs, r_threshold};

/// Exact clause-type law of the majority-positive rule by enumerating every
/// sign pattern of the `l` candidates.
fn enumerate_types(k: usize, l: usize) -> [f64; 3] {
    let mut tally = [0u64; 3];
    let total = 1u64 << (k * l);
    for mask in 0..total {
        let positives = |i: usize| ((mask >> (i * k)) & ((1 << k) - 1)).count_ones() as usize;
        let chosen = (0..l - 1).find(|&i| positives(i) >= 2).unwrap_or(l - 1);
        tally[positives(chosen).min(2)] += 1;
    }
    tally.map(|t| t as f64 / total as f64)
}

#[test]
fn clause_type_probs_match_enumeration() {
    for k in 2..=4 {
        for l in 1..=4 {
            let (p0, p1, p2) = clause_type_probs(k, l).unwrap();
            let [e0, e1, e2] = enumerate_types(k, l);
            for (a, b) in [(p0, e0), (p1, e1), (p2, e2)] {
                assert!((a - b).abs() < 1e-12, "k={k} l={l}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn threshold_from_enumerated_probabilities() {
    for (k, l) in [(3, 5), (2, 2), (2, 1), (3, 3)] {
        let [p0, p1, p2] = enumerate_types(k, l);
        let oracle = 1.0 / (p1 + 2.0 * (p0 * p2).sqrt());
        assert!((r_threshold(k, l).unwrap() - oracle).abs() < 1e-12);
    }
}

#[test]
fn larger_width_values() {
    let want = [(4, 19.554), (5, 79.231), (6, 332.877)];
    for (k, v) in want {
        assert!((r_threshold(k, 5).unwrap() - v).abs() < 1e-3, "k = {k}");
    }
}

#[test]
fn monte_carlo_independent_of_pool_size() {
    let cfg = MonteCarloConfig {
        n: 60,
        k: 3,
        l: 3,
        rule: RuleSpec::MajorityPositive,
        ratios: vec![3.0, 5.0, 7.0],
        trials: 24,
        seed: 99,
        decider: Decider::Dpll,
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| monte_carlo_sat_fraction(&cfg).unwrap())
    };
    let (a, b) = (run(1), run(3));
    assert_eq!(a.summary, b.summary);
    let verdicts = |r: &achlioptas_core::process::MonteCarloResult| -> Vec<Vec<bool>> {
        r.records
            .iter()
            .map(|t| t.checkpoints.iter().map(|c| c.sat).collect())
            .collect()
    };
    assert_eq!(verdicts(&a), verdicts(&b));
}

#[test]
fn gap_scores_independent_of_pool_size() {
    let spec = GapProblemSpec {
        n: 30,
        ..GapProblemSpec::default()
    };
    let decider: DeciderSpec = "unit-propagation-survival:0.5".parse().unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                score_decider(&decider, &adversary_library(), &spec, 5, 1, DEFAULT_BUDGET).unwrap()
            })
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.per_rule, b.per_rule);
    assert_eq!(a.instances, b.instances);
}

#[test]
fn binomial_model_moments() {
    let n = 400;
    let params = BinomialTwoSatParams::for_rule(2, 2, 0.9, n).unwrap();
    let trials = 60;
    let pairs = (n * (n - 1) / 2) as f64;
    let mut total = 0.0;
    let mut pos_pos = 0.0;
    for seed in 0..trials {
        let f = sample_binomial_2sat(&params, seed);
        total += f.len() as f64;
        pos_pos += f
            .clauses()
            .iter()
            .filter(|c| c.positive_count() == 2)
            .count() as f64;
    }
    let mean = total / trials as f64;
    let sd = (params.clause_count_variance() / trials as f64).sqrt();
    assert!((mean - params.expected_clauses()).abs() < 5.0 * sd);
    let q2_mean = pos_pos / trials as f64;
    let q2_sd = (pairs * params.q2 * (1.0 - params.q2) / trials as f64).sqrt();
    assert!((q2_mean - pairs * params.q2).abs() < 5.0 * q2_sd);
}
