use std::io::Write;

use super::{MonteCarloConfig, TrialRecord};
use crate::Result;

pub const TRIAL_CSV_HEADER: [&str; 8] =
    ["rule", "k", "l", "n", "ratio", "seed", "verdict", "millis"];

/// One row per (trial, checkpoint). With `timing` off the `millis` column is
/// left empty, which makes reruns byte-identical.
pub fn write_trial_csv<W: Write>(
    cfg: &MonteCarloConfig,
    records: &[TrialRecord],
    out: W,
    timing: bool,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRIAL_CSV_HEADER)?;
    let rule = cfg.rule.name();
    let (k, l, n) = (cfg.k.to_string(), cfg.l.to_string(), cfg.n.to_string());
    for rec in records {
        let seed = rec.seed.to_string();
        for cp in &rec.checkpoints {
            let millis = if timing {
                format!("{:.3}", cp.millis)
            } else {
                String::new()
            };
            w.write_record([
                rule,
                &k,
                &l,
                &n,
                &cp.ratio.to_string(),
                &seed,
                if cp.sat { "sat" } else { "unsat" },
                &millis,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{monte_carlo_sat_fraction, Decider, RuleSpec};

    #[test]
    fn rows_and_determinism() {
        let cfg = MonteCarloConfig {
            n: 30,
            k: 2,
            l: 2,
            rule: RuleSpec::MajorityPositive,
            ratios: vec![0.5, 1.2],
            trials: 3,
            seed: 1,
            decider: Decider::TwoSat,
        };
        let render = || {
            let r = monte_carlo_sat_fraction(&cfg).unwrap();
            let mut buf = Vec::new();
            write_trial_csv(&cfg, &r.records, &mut buf, false).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = render();
        assert_eq!(a, render());
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines[0], "rule,k,l,n,ratio,seed,verdict,millis");
        assert_eq!(lines.len(), 1 + 3 * 2);
        assert!(lines[1].starts_with("majority-positive,2,2,30,0.5,"));
        assert!(lines[1].ends_with(",sat,"));
    }

    #[test]
    fn header_only_for_no_records() {
        let cfg = MonteCarloConfig {
            n: 30,
            k: 2,
            l: 2,
            rule: RuleSpec::AlwaysFirst,
            ratios: vec![],
            trials: 3,
            seed: 1,
            decider: Decider::TwoSat,
        };
        let r = monte_carlo_sat_fraction(&cfg).unwrap();
        let mut buf = Vec::new();
        write_trial_csv(&cfg, &r.records, &mut buf, true).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "rule,k,l,n,ratio,seed,verdict,millis\n"
        );
    }
}
