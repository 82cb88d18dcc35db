//! Monte Carlo estimates of how often a random point set has no orthogonal
//! equipartition.
//!
//! Points are uniform on the integer grid `{0, …, G−1}³`. Trial `i` draws from
//! a ChaCha8 generator seeded with `seed` on stream `i`, so every trial is
//! reproducible on its own and trials can run in any order.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{has_equipartition, PointSet};
use crate::error::{Error, Result};
use crate::exact::Point3;

pub const DEFAULT_GRID: u64 = 1 << 20;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialConfig {
    pub set_size: usize,
    pub trials: u64,
    pub seed: u64,
    pub grid: u64,
}

impl TrialConfig {
    pub fn new(set_size: usize, trials: u64, seed: u64) -> Result<Self> {
        Self::with_grid(set_size, trials, seed, DEFAULT_GRID)
    }

    pub fn with_grid(set_size: usize, trials: u64, seed: u64, grid: u64) -> Result<Self> {
        if set_size == 0 || !set_size.is_multiple_of(8) {
            return Err(Error::InputSizeError(set_size));
        }
        if trials == 0 {
            return Err(Error::InvalidParameter("trials must be positive".into()));
        }
        // The grid must hold set_size distinct points and fit the engine's
        // floating-point filter comfortably.
        if grid == 0 || grid > 1 << 40 || grid.saturating_pow(3) < set_size as u64 {
            return Err(Error::InvalidParameter(format!("grid {grid} is out of range")));
        }
        Ok(TrialConfig {
            set_size,
            trials,
            seed,
            grid,
        })
    }
}

/// The generator for one trial.
pub fn trial_rng(c: &TrialConfig, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    rng.set_stream(trial_index);
    rng
}

/// Draws `set_size` distinct grid points; a point equal to an earlier one is
/// redrawn.
pub fn draw_point_set<R: Rng + ?Sized>(c: &TrialConfig, rng: &mut R) -> PointSet {
    let mut seen = std::collections::HashSet::with_capacity(c.set_size);
    let mut points = Vec::with_capacity(c.set_size);
    while points.len() < c.set_size {
        let p: [i64; 3] = std::array::from_fn(|_| rng.random_range(0..c.grid) as i64);
        if seen.insert(p) {
            points.push(Point3::from(p));
        }
    }
    PointSet::new(points).expect("distinct points of a valid size")
}

/// The first point set drawn for a trial.
pub fn sample_point_set(c: &TrialConfig, trial_index: u64) -> PointSet {
    draw_point_set(c, &mut trial_rng(c, trial_index))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialOutcome {
    pub failed: bool,
    /// Draws rejected for violating general position before the tested one.
    pub degeneracies: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: TrialConfig,
    pub trials_run: u64,
    pub failures: u64,
    pub degeneracies: u64,
    pub wall_time: Duration,
}

impl ExperimentReport {
    pub fn successes(&self) -> u64 {
        self.trials_run - self.failures
    }

    pub fn failure_rate(&self) -> f64 {
        self.failures as f64 / self.trials_run as f64
    }

    /// 95% Wilson score interval for the failure probability.
    pub fn wilson_interval(&self) -> (f64, f64) {
        wilson_interval(self.failures, self.trials_run)
    }
}

pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if failures == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if failures == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

/// Consecutive degenerate draws after which a trial gives up.
pub const MAX_DEGENERATE_DRAWS: u64 = 1000;

/// Runs one trial with `sampler` producing candidate sets from the trial's
/// generator until one is in general position.
pub fn run_trial<F>(c: &TrialConfig, trial_index: u64, sampler: &F) -> Result<TrialOutcome>
where
    F: Fn(&TrialConfig, &mut ChaCha8Rng) -> PointSet,
{
    let mut rng = trial_rng(c, trial_index);
    let mut degeneracies = 0;
    while degeneracies < MAX_DEGENERATE_DRAWS {
        let x = sampler(c, &mut rng);
        match has_equipartition(&x) {
            Ok(found) => {
                return Ok(TrialOutcome {
                    failed: !found,
                    degeneracies,
                })
            }
            Err(Error::GeneralPositionViolation { .. }) => degeneracies += 1,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidParameter(format!(
        "trial {trial_index}: {MAX_DEGENERATE_DRAWS} draws in a row were degenerate; the grid is too small"
    )))
}

pub fn run_trials(c: &TrialConfig) -> Result<ExperimentReport> {
    run_trials_with(c, 1, &draw_point_set::<ChaCha8Rng>)
}

/// As [`run_trials`] on `workers` threads with a custom sampler.
pub fn run_trials_with<F>(c: &TrialConfig, workers: usize, sampler: &F) -> Result<ExperimentReport>
where
    F: Fn(&TrialConfig, &mut ChaCha8Rng) -> PointSet + Sync,
{
    let start = Instant::now();
    let add = |a: (u64, u64), o: TrialOutcome| (a.0 + u64::from(o.failed), a.1 + o.degeneracies);
    let (failures, degeneracies) = if workers > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to start worker pool")
            .install(|| {
                (0..c.trials)
                    .into_par_iter()
                    .map(|i| run_trial(c, i, sampler).map(|o| add((0, 0), o)))
                    .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
            })?
    } else {
        let mut acc = (0, 0);
        for i in 0..c.trials {
            acc = add(acc, run_trial(c, i, sampler)?);
        }
        acc
    };
    Ok(ExperimentReport {
        config: *c,
        trials_run: c.trials,
        failures,
        degeneracies,
        wall_time: start.elapsed(),
    })
}
