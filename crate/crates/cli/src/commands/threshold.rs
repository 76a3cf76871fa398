use std::io::Write;
use std::path::PathBuf;

use achlioptas_core::threshold::{
    threshold_table, write_threshold_csv, RANDOM_3SAT_LOWER_BOUND, RANDOM_3SAT_UPPER_BOUND,
};
use serde::{Deserialize, Serialize};

use crate::config::{self, set, CmdResult, Failure};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Clause widths, comma separated.
    #[arg(long)]
    k: Option<String>,
    /// Candidates per step, comma separated.
    #[arg(long)]
    l: Option<String>,
    /// Write the table as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            k: vec![3],
            l: vec![1, 2, 3, 4, 5],
            out: None,
        }
    }
}

fn resolve(args: Args, ctx: &Context) -> CmdResult<Config> {
    let mut cfg: Config = config::load_section(ctx.config.as_deref(), "threshold")?;
    set(
        &mut cfg.k,
        args.k
            .as_deref()
            .map(config::parse_list)
            .transpose()
            .map_err(Failure::usage)?,
    );
    set(
        &mut cfg.l,
        args.l
            .as_deref()
            .map(config::parse_list)
            .transpose()
            .map_err(Failure::usage)?,
    );
    set(&mut cfg.out, args.out.map(Some));
    Ok(cfg)
}

pub fn run(args: Args, ctx: &Context) -> CmdResult {
    let cfg = resolve(args, ctx)?;
    let rows = threshold_table(&cfg.k, &cfg.l)?;

    println!(
        "{:>3} {:>3} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "k", "l", "p0", "p1", "p2", "r(k,l)", "2^k ln2", "margin"
    );
    for r in &rows {
        println!(
            "{:>3} {:>3} {:>12.6e} {:>12.6e} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            r.k, r.l, r.p0, r.p1, r.p2, r.r_kl, r.upper_bound_2k_ln2, r.margin
        );
    }
    for r in rows.iter().filter(|r| r.k == 3) {
        println!(
            "k=3 l={}: r = {:.6} vs lower bound {} ({}), upper bound {} ({})",
            r.l,
            r.r_kl,
            RANDOM_3SAT_LOWER_BOUND,
            if r.r_kl > RANDOM_3SAT_LOWER_BOUND {
                "above"
            } else {
                "below"
            },
            RANDOM_3SAT_UPPER_BOUND,
            if r.r_kl > RANDOM_3SAT_UPPER_BOUND {
                "above"
            } else {
                "below"
            },
        );
    }

    if let Some(path) = &cfg.out {
        let mut w = config::create(path)?;
        config::write_csv_preamble(&mut w, &config::provenance("threshold", ctx.threads, &cfg))?;
        write_threshold_csv(&rows, &mut w)?;
        w.flush()?;
    }
    Ok(())
}
