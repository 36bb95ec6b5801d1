//! Command-line front end for `suilab-core`.

pub mod args;
pub mod config;
pub mod error;
pub mod eval;
pub mod figure;
pub mod parse_check;
pub mod report;
pub mod svg;
pub mod sweep;
pub mod table;
pub mod target;

use std::io::Write;

pub use args::Cli;
pub use error::{CliError, CliResult};

use args::Command;

/// Worker pool for sweeps and figures, capped by `SUILAB_THREADS` when set.
pub fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let threads = match std::env::var("SUILAB_THREADS") {
        Err(_) => 0,
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => {
                return Err(CliError::Usage(format!("SUILAB_THREADS must be a positive integer, got '{v}'")))
            }
        },
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Eval(a) => eval::run(a, out),
        Command::Figure(a) => figure::run(a, &thread_pool()?, out),
        Command::Sweep(a) => sweep::run(a, &thread_pool()?, out),
        Command::ParseCheck(a) => parse_check::run(a, out, err),
    }
}
