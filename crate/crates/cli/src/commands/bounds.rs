use std::path::PathBuf;

use achlioptas_core::threshold::{
    expected_bicycles_bound, expected_paths_bound, path_length_for, r_threshold, BoundValue,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{self, set, CmdResult};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Clause density; defaults to 0.95 r(k,l).
    #[arg(long)]
    r: Option<f64>,
    /// Number of variables (may be given as e.g. 1e6).
    #[arg(long)]
    n: Option<f64>,
    /// Path length; defaults to ceil(40 ln n).
    #[arg(long = "len", short = 'L')]
    len: Option<usize>,
    /// Write the bounds as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub k: usize,
    pub l: usize,
    pub r: Option<f64>,
    pub n: f64,
    pub len: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            k: 2,
            l: 2,
            r: None,
            n: 1e6,
            len: None,
            out: None,
        }
    }
}

fn show(label: &str, b: &BoundValue) {
    match b.linear() {
        Some(v) => println!("{label}: {v:.6e} (ln = {:.6})", b.log),
        None => println!("{label}: overflows f64 (ln = {:.6})", b.log),
    }
}

pub fn run(args: Args, ctx: &Context) -> CmdResult {
    let mut cfg: Config = config::load_section(ctx.config.as_deref(), "bounds")?;
    set(&mut cfg.k, args.k);
    set(&mut cfg.l, args.l);
    set(&mut cfg.r, args.r.map(Some));
    set(&mut cfg.n, args.n);
    set(&mut cfg.len, args.len.map(Some));
    set(&mut cfg.out, args.out.map(Some));

    let r = match cfg.r {
        Some(r) => r,
        None => 0.95 * r_threshold(cfg.k, cfg.l)?,
    };
    let len = cfg.len.unwrap_or_else(|| path_length_for(cfg.n, 1.0));
    let paths = expected_paths_bound(cfg.n, len, r, cfg.k, cfg.l)?;
    let bicycles = expected_bicycles_bound(cfg.n, len.max(2), r, cfg.k, cfg.l)?;

    println!(
        "k = {}, l = {}, n = {}, r = {r:.6}, L = {len}",
        cfg.k, cfg.l, cfg.n
    );
    show("expected paths of length L", &paths);
    show("expected bicycles of length <= L", &bicycles);

    if let Some(path) = &cfg.out {
        let mut doc = config::provenance("bounds", ctx.threads, &cfg);
        doc["r"] = json!(r);
        doc["len"] = json!(len);
        doc["paths"] = json!({ "log": paths.log, "value": paths.linear() });
        doc["bicycles"] = json!({ "log": bicycles.log, "value": bicycles.linear() });
        config::write_json(path, &doc)?;
    }
    Ok(())
}
