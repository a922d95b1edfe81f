use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quatspec::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "quatspec", version, about = "S-spectra, Fredholm indices and essential spectra of quaternionic operators")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Tolerance override: point-spectrum threshold for `spectrum`, oracle
    /// threshold for `fredholm` without `--q`. Must be positive.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<f64>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sphere classes of a matrix read from JSON `{n, entries}`.
    Spectrum { matrix: PathBuf },
    /// CSV of μ(A, q) over a grid in the (re, rad) half-plane.
    Scan {
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        re_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        re_max: f64,
        #[arg(long)]
        rad_max: f64,
        /// `N` or `NxM` (re points x rad points).
        #[arg(long)]
        grid: String,
    },
    /// Fredholm data of a structured expression, or the verdict for its
    /// pseudo-resolvent at `--q`.
    Fredholm {
        expr: String,
        #[arg(long)]
        env: Option<PathBuf>,
        /// `q0,q1,q2,q3`.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Runs a verification suite.
    Verify { suite: String },
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Numerical(_) | Error::RankAmbiguous(_) | Error::NotContractive(_) => 3,
        Error::Conflict(_) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Spectrum { matrix } => commands::spectrum(&cli.global, &matrix),
        Command::Scan { matrix, re_min, re_max, rad_max, grid } => {
            commands::scan(&cli.global, &matrix, (re_min, re_max), rad_max, &grid)
        }
        Command::Fredholm { expr, env, q } => commands::fredholm(&cli.global, &expr, env.as_deref(), q.as_deref()),
        Command::Verify { suite } => commands::verify(&cli.global, &suite),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code)
        }
    }
}
