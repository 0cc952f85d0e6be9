use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use sic_core::commands::{self, CommandError, SetSource};
use sic_core::kssets::BuiltinSet;
use sic_core::report::Format;
use sic_core::reproduce::DEFAULT_SEED;
use sic_core::symmetrizer::Statistics;

#[derive(Parser)]
#[command(
    name = "sic",
    version,
    about = "Exact checks of state-independent contextuality for identical qudits"
)]
struct Cli {
    /// Seed for random rational states.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output format: human or records.
    #[arg(long, global = true, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Subspace dimension and scenario class for n particles with d levels.
    Classify {
        n: usize,
        d: usize,
        /// boson or fermion
        statistics: Statistics,
    },
    /// Orthogonal basis of the symmetric or antisymmetric subspace.
    Basis {
        n: usize,
        d: usize,
        statistics: Statistics,
        /// Use the printed two-qutrit basis instead of the generated one.
        #[arg(long)]
        paper: bool,
    },
    /// Inspect a KS set: `ksset A3 frames`, `ksset --file set.txt color`.
    Ksset {
        /// Set name (A3, S4, S6) followed by the action, or just the action with --file.
        #[arg(num_args = 1..=2, required = true)]
        words: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Comma-separated integer amplitudes for `quantum`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        state: Option<Vec<i64>>,
    },
    /// Run every verification check and print a pass/fail table.
    Reproduce {
        /// Replace the built-in A3 set (negative controls).
        #[arg(long)]
        a3_file: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<sic_core::report::RunReport, CommandError> {
    match &cli.command {
        Command::Classify { n, d, statistics } => commands::classify(*n, *d, *statistics),
        Command::Basis {
            n,
            d,
            statistics,
            paper,
        } => commands::basis(*n, *d, *statistics, *paper),
        Command::Ksset { words, file, state } => {
            let (source, action) = match (file, words.as_slice()) {
                (Some(path), [action]) => (SetSource::File(path.clone()), action),
                (None, [name, action]) => {
                    let set = BuiltinSet::parse(name).ok_or_else(|| {
                        CommandError::Usage(format!("unknown set {name:?} (expected A3, S4 or S6)"))
                    })?;
                    (SetSource::Builtin(set), action)
                }
                _ => {
                    return Err(CommandError::Usage(
                        "usage: ksset <A3|S4|S6> <action> or ksset --file <path> <action>".into(),
                    ))
                }
            };
            commands::ksset(&source, action.parse()?, state.as_deref(), cli.seed)
        }
        Command::Reproduce { a3_file } => commands::reproduce(cli.seed, a3_file.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
