use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

use config::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "achlioptas",
    version = concat!(env!("CARGO_PKG_VERSION"), " (", env!("ACHLIOPTAS_BUILD_ID"), ")"),
    about = "Thresholds, simulations and gap experiments for Achlioptas k-SAT processes"
)]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "ACHLIOPTAS_THREADS")]
    threads: Option<usize>,
    /// JSON config file; explicit flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate r(k,l) and compare with known bounds.
    Threshold(commands::threshold::Args),
    /// Monte Carlo satisfiable fraction of a process.
    Simulate(commands::simulate::Args),
    /// Check the numeric conditions behind the threshold shift.
    Verify(commands::verify::Args),
    /// Evaluate the path and bicycle expectation bounds.
    Bounds(commands::bounds::Args),
    /// Score a decider on the semi-random gap problem.
    Gap(commands::gap::Args),
    /// Reduce a DIMACS k-SAT formula to 2-SAT.
    Reduce(commands::reduce::Args),
}

pub struct Context {
    pub config: Option<PathBuf>,
    pub threads: usize,
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.threads == Some(0) {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    }
    let ctx = Context {
        config: cli.config,
        threads: rayon::current_num_threads(),
    };
    match cli.command {
        Command::Threshold(a) => commands::threshold::run(a, &ctx),
        Command::Simulate(a) => commands::simulate::run(a, &ctx),
        Command::Verify(a) => commands::verify::run(a, &ctx),
        Command::Bounds(a) => commands::bounds::run(a, &ctx),
        Command::Gap(a) => commands::gap::run(a, &ctx),
        Command::Reduce(a) => commands::reduce::run(a, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
