use std::path::PathBuf;

use achlioptas_core::threshold::{formula_self_checks, verify_shift_conditions, Check};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, set, CmdResult, Failure};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Write the report as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub out: Option<PathBuf>,
}

fn print(c: &Check) {
    let tag = if c.passed { "PASS" } else { "FAIL" };
    println!("[{tag}] {}: {} (margin {:.6e})", c.name, c.detail, c.margin);
}

pub fn run(args: Args, ctx: &Context) -> CmdResult {
    let mut cfg: Config = config::load_section(ctx.config.as_deref(), "verify")?;
    set(&mut cfg.out, args.out.map(Some));

    let report = verify_shift_conditions();
    let checks = formula_self_checks();
    println!("shift conditions:");
    report.items.iter().for_each(print);
    println!("self-checks:");
    checks.iter().for_each(print);
    let passed = report.all_passed() && checks.iter().all(|c| c.passed);

    if let Some(path) = &cfg.out {
        let mut doc = config::provenance("verify", ctx.threads, &cfg);
        doc["passed"] = json!(passed);
        doc["items"] = serde_json::to_value(&report.items)?;
        doc["self_checks"] = serde_json::to_value(&checks)?;
        config::write_json(path, &doc)?;
    }
    if passed {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure::verify("verification failed"))
    }
}
