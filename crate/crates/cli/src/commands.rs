//! Subcommand bodies. Each returns an exit code; diagnostics go to stderr.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use equipart_core::engine::{search, PointSet, SearchOptions};
use equipart_core::experiments::{draw_point_set, run_trials_with, TrialConfig};
use equipart_core::moment::{counterexample_set, tail_survey, MomentParams};
use equipart_core::Error;

use crate::document::{to_json, ExperimentDocument, InputEcho, MomentDocument, ResultDocument, Timing, TOOL};
use crate::pointfile::{read_point_file, render_points};
use crate::{Command, EXIT_ERROR, EXIT_GENERAL_POSITION, EXIT_NONE_FOUND, EXIT_OK, EXIT_VERIFY_FAILED};

/// Random supports of each kind checked by `moment --verify`.
pub const VERIFY_SAMPLES: usize = 1000;

pub fn dispatch(cmd: Command) -> i32 {
    match cmd {
        Command::Find {
            input,
            output,
            first_only,
            workers,
            timing,
        } => cmd_find(&input, &output, first_only, workers.into(), timing),
        Command::Random {
            size,
            trials,
            seed,
            grid,
            output,
            workers,
            timing,
        } => cmd_random(size, trials, seed, grid, &output, workers.into(), timing),
        Command::Moment {
            count,
            t_start,
            t_step,
            emit,
            verify,
            workers,
        } => cmd_moment(count, t_start, t_step, emit.as_deref(), verify, workers.into()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), i32> {
    fs::write(path, contents).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_ERROR
    })
}

fn fail(e: impl std::fmt::Display) -> i32 {
    eprintln!("error: {e}");
    EXIT_ERROR
}

pub fn cmd_find(input: &Path, output: &Path, first_only: bool, workers: usize, timing: bool) -> i32 {
    let points = match read_point_file(input) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let x = match PointSet::new(points) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let opts = SearchOptions {
        first_only,
        workers,
        ..SearchOptions::default()
    };
    let start = Instant::now();
    let out = match search(&x, &opts) {
        Ok(out) => out,
        Err(e @ Error::GeneralPositionViolation { .. }) => {
            eprintln!("error: {e}");
            return EXIT_GENERAL_POSITION;
        }
        Err(e) => return fail(e),
    };
    let elapsed = start.elapsed();
    let mut doc = ResultDocument::new(x.points(), first_only, &out.records, out.stats);
    if timing {
        doc.timing = Some(Timing {
            wall_ms: elapsed.as_millis(),
        });
    }
    if let Err(code) = write_file(output, &to_json(&doc)) {
        return code;
    }
    if out.records.is_empty() {
        EXIT_NONE_FOUND
    } else {
        EXIT_OK
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_random(size: usize, trials: u64, seed: u64, grid: u64, output: &Path, workers: usize, timing: bool) -> i32 {
    let config = match TrialConfig::with_grid(size, trials, seed, grid) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let report = match run_trials_with(&config, workers, &draw_point_set) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    match write_file(output, &to_json(&ExperimentDocument::new(&report, timing))) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

pub fn cmd_moment(count: usize, t_start: i64, t_step: i64, emit: Option<&Path>, verify: bool, workers: usize) -> i32 {
    let params = match MomentParams::new(t_start, t_step, count) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let x = match counterexample_set(&params) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    let rendered = render_points(x.points());
    match emit {
        Some(path) => {
            if let Err(code) = write_file(path, &rendered) {
                return code;
            }
        }
        None if !verify => {
            let _ = std::io::stdout().write_all(rendered.as_bytes());
            return EXIT_OK;
        }
        None => {}
    }
    if !verify {
        return EXIT_OK;
    }
    let opts = SearchOptions {
        workers,
        ..SearchOptions::default()
    };
    let found = match search(&x, &opts) {
        Ok(out) => out.records.len(),
        Err(e) => {
            eprintln!("verification failed: {e}");
            return EXIT_VERIFY_FAILED;
        }
    };
    let ts: Vec<i64> = params.parameters().collect();
    let tail = match tail_survey(&ts, VERIFY_SAMPLES, 0) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("verification failed: {e}");
            return EXIT_VERIFY_FAILED;
        }
    };
    let verified = found == 0 && tail.violations == 0;
    let doc = MomentDocument {
        tool: TOOL,
        params,
        input: InputEcho::new(x.points()),
        equipartitions: found,
        tail,
        verified,
    };
    let _ = std::io::stdout().write_all(to_json(&doc).as_bytes());
    if verified {
        EXIT_OK
    } else {
        eprintln!(
            "verification failed: {found} equipartitions, {} tail violations",
            doc.tail.violations
        );
        EXIT_VERIFY_FAILED
    }
}
