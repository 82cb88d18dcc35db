//! Command-line front end: point files in, JSON documents out.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (`find`: at least one equipartition) |
//! | 1 | bad arguments, I/O, parse or size errors |
//! | 2 | `find`: input not in general position |
//! | 3 | `find`: no orthogonal equipartition |
//! | 4 | `moment --verify`: verification failed |

pub mod commands;
pub mod document;
pub mod pointfile;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_GENERAL_POSITION: i32 = 2;
pub const EXIT_NONE_FOUND: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "equipart", version, about = "Orthogonal equipartitions of point sets in R^3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the orthogonal equipartitions of a point file.
    Find {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Stop at the first equipartition found.
        #[arg(long)]
        first_only: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
        /// Include wall time in the document.
        #[arg(long)]
        timing: bool,
    },
    /// Estimate how often random point sets have no equipartition.
    Random {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Coordinates are drawn from {0, ..., grid-1}.
        #[arg(long, default_value_t = equipart_core::experiments::DEFAULT_GRID)]
        grid: u64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
        #[arg(long)]
        timing: bool,
    },
    /// Points on the moment curve (t, t^2, t^3), optionally verified to have
    /// no orthogonal equipartition.
    Moment {
        #[arg(long)]
        count: usize,
        #[arg(long, allow_hyphen_values = true)]
        t_start: i64,
        #[arg(long, allow_hyphen_values = true)]
        t_step: i64,
        /// Write the point file here instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
        workers: u16,
    },
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    commands::dispatch(cli.command)
}
