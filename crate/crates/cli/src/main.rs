//! `qmeasure <family> <subcommand> [flags]`
//!
//! Exit status: 0 on success, 1 when a checked bound or claimed property
//! fails, 2 on invalid input or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

mod bounds;
mod examples;
mod lan;
mod output;
mod pointer;

use output::{emit, Outcome, RunContext};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

pub fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "qmeasure", version, about = "Quantum measurement trade-off toolkit")]
struct Cli {
    /// Master seed (64-bit); each command has its own default.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance override for bound checks (default 1e-9).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for parallel loops (default: all cores).
    #[arg(long, global = true, env = "QM_THREADS")]
    threads: Option<usize>,
    /// Directory for reports, tables and the run manifest.
    #[arg(long, global = true, default_value = "qmeasure-out")]
    out_dir: PathBuf,
    /// Do not echo the report on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Trade-off inequalities.
    Bounds {
        #[command(subcommand)]
        cmd: bounds::BoundsCmd,
    },
    /// Homodyne pointer functions for a decaying qubit.
    Pointer {
        #[command(subcommand)]
        cmd: pointer::PointerCmd,
    },
    /// Two-stage adaptive qubit estimation.
    Lan(lan::LanCmd),
    /// Worked examples.
    Examples {
        #[command(subcommand)]
        cmd: examples::ExamplesCmd,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.family {
        Family::Bounds { cmd } => bounds::run(cmd, cli.seed, cli.tol),
        Family::Pointer { cmd } => pointer::run(cmd),
        Family::Lan(cmd) => lan::run(cmd, cli.seed),
        Family::Examples { cmd } => examples::run(cmd, cli.tol),
    }
}

fn command_name(cli: &Cli) -> String {
    match &cli.family {
        Family::Bounds { cmd } => format!("bounds {}", cmd.name()),
        Family::Pointer { cmd } => format!("pointer {}", cmd.name()),
        Family::Lan(cmd) => format!("lan {}", cmd.name()),
        Family::Examples { cmd } => format!("examples {}", cmd.name()),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    if let Some(t) = cli.tol {
        if !(t >= 0.0 && t.is_finite()) {
            eprintln!("invalid input: --tol must be a finite non-negative number");
            return ExitCode::from(2);
        }
    }
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("invalid input: cannot start {n} worker threads");
            return ExitCode::from(2);
        }
    }
    let ctx = RunContext {
        command: command_name(&cli),
        flags: std::env::args().skip(1).collect(),
        seed: cli.seed,
        tol: cli.tol,
        threads: cli.threads,
        out_dir: cli.out_dir.clone(),
        start,
    };
    let result = run(&cli).and_then(|out| emit(&ctx, &out).map(|text| (text, out.violation)));
    match result {
        Ok((text, violation)) => {
            if !cli.quiet {
                print!("{text}");
            }
            if violation {
                eprintln!("{}: check failed", ctx.command);
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
