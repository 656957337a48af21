//! `conjwidth`: decompositions into conjugates and width reports, with JSON
//! certificates that can be re-verified independently.
//!
//! Exit status: 0 on verified success, 1 on a counterexample or a failed
//! verification, 2 on invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod certificate;
mod commands;
mod io;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl From<conjwidth::Error> for Failure {
    fn from(e: conjwidth::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "conjwidth",
    version,
    about = "Certified decompositions into conjugates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON file.
    #[arg(long = "in", value_name = "FILE", global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout if omitted.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Size guard for group enumeration.
    #[arg(long = "max-size", default_value_t = conjwidth::finwidth::DEFAULT_SIZE_LIMIT, global = true)]
    pub max_size: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Thompson's group F.
    Thompson {
        #[command(subcommand)]
        cmd: ThompsonCmd,
        #[command(flatten)]
        common: Common,
    },
    /// SL_n(Z) and SL_n(F_p).
    Sl {
        #[command(subcommand)]
        cmd: SlCmd,
        #[command(flatten)]
        common: Common,
    },
    /// Free products of cyclic groups.
    Freeprod {
        #[command(subcommand)]
        cmd: FreeprodCmd,
        #[command(flatten)]
        common: Common,
    },
    /// Finite permutation groups.
    Finite {
        #[command(subcommand)]
        cmd: FiniteCmd,
        #[command(flatten)]
        common: Common,
    },
    /// Re-verify any certificate written by this tool.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum ThompsonCmd {
    /// Write `h` as at most six conjugates of `f^{±1}`.
    Decompose,
    /// Re-verify a Thompson certificate.
    Verify,
    /// Emit a decompose input: `f` nonidentity in F' and random commutators.
    Sample {
        /// Number of commutator pairs in `h`.
        #[arg(long, default_value_t = 1)]
        pairs: usize,
        /// Number of commutator factors in each random element.
        #[arg(long, default_value_t = 2)]
        complexity: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SlCmd {
    /// Certificate over the conjugacy class of t_12(1).
    Decompose,
    /// Width of SL_n(F_p) with respect to all transvections.
    Width {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum FreeprodCmd {
    /// Z2 * Z2 word as at most two conjugates of a or b.
    Decompose,
    /// Search for a conjugate of a palindrome that is not a palindrome.
    PalindromeCheck,
}

#[derive(Subcommand, Debug)]
pub enum FiniteCmd {
    Width,
    Bergman,
    Extension,
    Norms,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Thompson { cmd, common } => commands::thompson(cmd, &common),
        Command::Sl { cmd, common } => commands::sl(cmd, &common),
        Command::Freeprod { cmd, common } => commands::freeprod(cmd, &common),
        Command::Finite { cmd, common } => commands::finite(cmd, &common),
        Command::Verify { common } => commands::verify_any(&common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
