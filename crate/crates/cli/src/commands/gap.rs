use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use achlioptas_core::gap::{
    adversary_library, gap_stream, score_decider, write_gap_csv, DeciderSpec, GapProblemSpec,
};
use achlioptas_core::process::RuleSpec;
use achlioptas_core::sat::write_dimacs;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, set, CmdResult, Failure};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    /// Adversary rules, comma separated; defaults to the full library.
    #[arg(long)]
    rules: Option<String>,
    /// `constant-yes`, `constant-no` or `<statistic>:<threshold>` with
    /// statistic one of positive-bias, unit-propagation-survival,
    /// two-core-density.
    #[arg(long)]
    decider: Option<String>,
    /// Instances per rule.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Solver budget per instance, in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Per-rule CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON with per-rule rows, the worst rule and per-instance verdicts.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Directory for DIMACS checkpoints and clause logs of every instance.
    #[arg(long)]
    export_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub c1: f64,
    pub c2: f64,
    pub rules: Vec<RuleSpec>,
    pub decider: String,
    pub trials: usize,
    pub seed: u64,
    pub budget: f64,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub export_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        let spec = GapProblemSpec::default();
        Config {
            k: spec.k,
            l: spec.l,
            n: spec.n,
            c1: spec.c1,
            c2: spec.c2,
            rules: adversary_library(),
            decider: "constant-yes".into(),
            trials: 20,
            seed: 0,
            budget: 10.0,
            out: None,
            summary: None,
            export_dir: None,
        }
    }
}

pub fn run(args: Args, ctx: &Context) -> CmdResult {
    let mut cfg: Config = config::load_section(ctx.config.as_deref(), "gap")?;
    set(&mut cfg.k, args.k);
    set(&mut cfg.l, args.l);
    set(&mut cfg.n, args.n);
    set(&mut cfg.c1, args.c1);
    set(&mut cfg.c2, args.c2);
    set(
        &mut cfg.rules,
        args.rules
            .as_deref()
            .map(config::parse_list)
            .transpose()
            .map_err(Failure::usage)?,
    );
    set(&mut cfg.decider, args.decider);
    set(&mut cfg.trials, args.trials);
    set(&mut cfg.seed, args.seed);
    set(&mut cfg.budget, args.budget);
    set(&mut cfg.out, args.out.map(Some));
    set(&mut cfg.summary, args.summary.map(Some));
    set(&mut cfg.export_dir, args.export_dir.map(Some));

    let spec = GapProblemSpec {
        k: cfg.k,
        l: cfg.l,
        n: cfg.n,
        c1: cfg.c1,
        c2: cfg.c2,
    };
    spec.validate()?;
    let decider: DeciderSpec = cfg.decider.parse()?;
    for r in &cfg.rules {
        r.check_arity(cfg.l)?;
    }
    if !(cfg.budget.is_finite() && cfg.budget >= 0.0) {
        return Err(Failure::usage(
            "--budget must be a finite number of seconds >= 0",
        ));
    }
    let report = score_decider(
        &decider,
        &cfg.rules,
        &spec,
        cfg.trials,
        cfg.seed,
        Duration::from_secs_f64(cfg.budget),
    )?;

    println!(
        "decider = {}, n = {}, c1 = {}, c2 = {}, trials/rule = {}",
        decider, spec.n, spec.c1, spec.c2, cfg.trials
    );
    println!(
        "{:>22} {:>7} {:>9} {:>10} {:>19}",
        "rule", "errors", "excluded", "error rate", "95% Wilson"
    );
    for r in &report.per_rule {
        println!(
            "{:>22} {:>7} {:>9} {:>10.4} [{:.4}, {:.4}]",
            r.rule.name(),
            r.errors,
            r.excluded,
            r.error_rate,
            r.ci_low,
            r.ci_high
        );
    }
    if let Some(w) = report.worst() {
        println!(
            "worst case: {} with error rate {:.4}",
            w.rule.name(),
            w.error_rate
        );
    }
    let excluded: usize = report.per_rule.iter().map(|r| r.excluded).sum();
    println!("excluded (solver budget exceeded): {excluded}");
    if report.monotonicity_violations() > 0 {
        eprintln!(
            "warning: {} monotonicity violations",
            report.monotonicity_violations()
        );
    }

    let prov = config::provenance("gap", ctx.threads, &cfg);
    if let Some(path) = &cfg.out {
        let mut w = config::create(path)?;
        config::write_csv_preamble(&mut w, &prov)?;
        write_gap_csv(&report.per_rule, &mut w)?;
        w.flush()?;
    }
    if let Some(path) = &cfg.summary {
        let mut doc = prov;
        doc["worst"] = json!(report.worst());
        doc["excluded"] = json!(excluded);
        doc["monotonicity_violations"] = json!(report.monotonicity_violations());
        doc["per_rule"] = json!(report.per_rule);
        doc["instances"] = json!(report.instances);
        config::write_json(path, &doc)?;
    }
    if let Some(dir) = &cfg.export_dir {
        std::fs::create_dir_all(dir)?;
        for inst in &report.instances {
            let stream = gap_stream(&spec, inst.rule, inst.seed)?;
            let stem = format!("{}-{:04}", inst.rule.name(), inst.trial);
            for (tag, m) in [("c1", spec.low_steps()), ("c2", spec.high_steps())] {
                let mut w = config::create(&dir.join(format!("{stem}-{tag}.cnf")))?;
                writeln!(w, "c seed {} steps {m}", inst.seed)?;
                write_dimacs(&stream.prefix(m), &mut w)?;
                w.flush()?;
            }
            let mut w = config::create(&dir.join(format!("{stem}-log.csv")))?;
            stream.write_clause_log(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}
