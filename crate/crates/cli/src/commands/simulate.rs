use std::io::Write;
use std::path::PathBuf;

use achlioptas_core::process::{
    monte_carlo_sat_fraction, write_trial_csv, Decider, MonteCarloConfig, RuleSpec,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, set, CmdResult, Failure};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    rule: Option<RuleSpec>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Clause densities m/n, comma separated; may be empty.
    #[arg(long)]
    ratios: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `dpll` or `two-sat`; defaults to `two-sat` when k = 2.
    #[arg(long)]
    decider: Option<Decider>,
    /// Per-trial CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-ratio JSON summary.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Leave the timing column empty so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub rule: RuleSpec,
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub ratios: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub decider: Option<Decider>,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            rule: RuleSpec::MajorityPositive,
            k: 3,
            l: 2,
            n: 100,
            ratios: vec![4.0],
            trials: 100,
            seed: 0,
            decider: None,
            out: None,
            summary: None,
            timing: true,
        }
    }
}

pub fn run(args: Args, ctx: &Context) -> CmdResult {
    let mut cfg: Config = config::load_section(ctx.config.as_deref(), "simulate")?;
    set(&mut cfg.rule, args.rule);
    set(&mut cfg.k, args.k);
    set(&mut cfg.l, args.l);
    set(&mut cfg.n, args.n);
    set(
        &mut cfg.ratios,
        args.ratios
            .as_deref()
            .map(config::parse_list)
            .transpose()
            .map_err(Failure::usage)?,
    );
    set(&mut cfg.trials, args.trials);
    set(&mut cfg.seed, args.seed);
    set(&mut cfg.decider, args.decider.map(Some));
    set(&mut cfg.out, args.out.map(Some));
    set(&mut cfg.summary, args.summary.map(Some));
    if args.no_timing {
        cfg.timing = false;
    }
    let decider = cfg.decider.unwrap_or(if cfg.k == 2 {
        Decider::TwoSat
    } else {
        Decider::Dpll
    });
    cfg.decider = Some(decider);
    cfg.rule.check_arity(cfg.l)?;

    let mc = MonteCarloConfig {
        n: cfg.n,
        k: cfg.k,
        l: cfg.l,
        rule: cfg.rule,
        ratios: cfg.ratios.clone(),
        trials: cfg.trials,
        seed: cfg.seed,
        decider,
    };
    let result = monte_carlo_sat_fraction(&mc)?;

    println!(
        "rule = {}, k = {}, l = {}, n = {}, trials = {}",
        cfg.rule.name(),
        cfg.k,
        cfg.l,
        cfg.n,
        cfg.trials
    );
    println!(
        "{:>8} {:>10} {:>8} {:>10} {:>21}",
        "ratio", "steps", "sat", "fraction", "95% Wilson"
    );
    for s in &result.summary {
        println!(
            "{:>8} {:>10} {:>8} {:>10.4} [{:.4}, {:.4}]",
            s.ratio, s.steps, s.sat, s.fraction, s.wilson95.low, s.wilson95.high
        );
    }

    let prov = config::provenance("simulate", ctx.threads, &cfg);
    if let Some(path) = &cfg.out {
        let mut w = config::create(path)?;
        config::write_csv_preamble(&mut w, &prov)?;
        write_trial_csv(&mc, &result.records, &mut w, cfg.timing)?;
        w.flush()?;
    }
    if let Some(path) = &cfg.summary {
        let mut doc = prov;
        doc["summary"] = json!(result.summary);
        config::write_json(path, &doc)?;
    }
    Ok(())
}
