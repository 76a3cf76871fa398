use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;

use achlioptas_core::reduction::reduce_to_2sat;
use achlioptas_core::sat::{read_dimacs, write_dimacs};
use serde::{Deserialize, Serialize};

use crate::config::{self, set, CmdResult, Failure};
use crate::Context;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// DIMACS k-SAT input with a uniform clause width k >= 2.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// DIMACS 2-SAT output; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

pub fn run(args: Args, ctx: &Context) -> CmdResult {
    let mut cfg: Config = config::load_section(ctx.config.as_deref(), "reduce")?;
    set(&mut cfg.input, args.input.map(Some));
    set(&mut cfg.output, args.output.map(Some));
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| Failure::usage("--input is required"))?;

    let file = File::open(input)
        .map_err(|e| Failure::usage(format!("cannot open {}: {e}", input.display())))?;
    let formula = read_dimacs(BufReader::new(file), None)?;
    let reduced = reduce_to_2sat(&formula)?;

    let prov = serde_json::to_string(&config::provenance("reduce", ctx.threads, &cfg))?;
    let emit = |w: &mut dyn Write| -> CmdResult {
        writeln!(w, "c achlioptas {}", config::BUILD_ID)?;
        writeln!(w, "c config: {prov}")?;
        write_dimacs(&reduced, &mut *w)?;
        w.flush()?;
        Ok(())
    };
    match &cfg.output {
        Some(path) => emit(&mut config::create(path)?)?,
        None => emit(&mut io::stdout().lock())?,
    }
    eprintln!(
        "reduced {} clauses of width {} to width 2",
        formula.len(),
        formula.k()
    );
    Ok(())
}
