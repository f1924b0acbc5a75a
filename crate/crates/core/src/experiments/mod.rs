//! Reproducible batch experiments with CSV output.
//!
//! Trials run in parallel on a rayon pool (`INDREG_THREADS` sets its size);
//! rows are collected in `(n, trial)` order, so the bytes never depend on
//! the schedule.

mod config;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

pub use config::{ExperimentConfig, ExperimentKind, SearchMode, DEFAULT_EXACT_CAP};

use crate::enumeration::EXACT_K_LIMIT;
use crate::error::{Error, Result};
use crate::graph::{sample_gnp, Seed};
use crate::moments::{fmt_float, log_expected_count, variance_bound_profile, PkMode, PkiMode};
use crate::search::{max_induced_regular_exact, max_induced_regular_heuristic};

pub const THREADS_ENV: &str = "INDREG_THREADS";

pub const SWEEP_CSV_HEADER: &str =
    "n,trial,seed,observed_max_size,observed_r,optimal,bound_2n23,k,log_ex";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub trial: u64,
    /// Seed the graph was sampled from.
    pub seed: Seed,
    pub observed_max_size: usize,
    pub observed_r: usize,
    pub optimal: bool,
    /// `2 n^(2/3)`.
    pub bound_2n23: f64,
    /// `k` used for `log_ex`.
    pub k: u64,
    /// `ln E[X]` at `k`.
    pub log_ex: f64,
}

/// `2 n^(2/3)`.
pub fn bound_2n23(n: u64) -> f64 {
    2.0 * (n as f64).powf(2.0 / 3.0)
}

/// Nearest `k = 1 (mod 4)` to `size`, the smaller one on ties. These are
/// the odd `k` with `p_k > 0`.
pub fn nearest_feasible_k(size: usize) -> u64 {
    let s = size as u64;
    let below = if s == 0 { 1 } else { s - (s + 3) % 4 };
    let above = below + 4;
    if s <= 1 || s - below <= above - s {
        below.max(1)
    } else {
        above
    }
}

/// Seed for trial `trial` at order `n`.
pub fn trial_seed(master: Seed, n: u64, trial: u64) -> Seed {
    master.derive(n).derive(trial)
}

fn pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads: usize = v
            .parse()
            .map_err(|_| Error::config(THREADS_ENV, format!("not a thread count: {v:?}")))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| Error::config(THREADS_ENV, e.to_string()))
}

/// `ln E[X]` with exact p_k inside the exact budget when `mode` asks for
/// it, the estimate otherwise. Memoised per `(n, k)`.
struct LogExCache {
    mode: PkMode,
    values: Mutex<HashMap<(u64, u64), f64>>,
}

impl LogExCache {
    fn get(&self, n: u64, k: u64) -> Result<f64> {
        if let Some(&v) = self.values.lock().unwrap().get(&(n, k)) {
            return Ok(v);
        }
        let mode = if self.mode == PkMode::Exact && k as usize <= EXACT_K_LIMIT {
            PkMode::Exact
        } else {
            PkMode::Asymptotic
        };
        let v = if k > n {
            f64::NEG_INFINITY
        } else {
            log_expected_count(n, k, mode)?
        };
        self.values.lock().unwrap().insert((n, k), v);
        Ok(v)
    }
}

pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    if config.command != ExperimentKind::Sweep {
        return Err(Error::config("command", "run_sweep needs command = sweep"));
    }
    let jobs: Vec<(u64, u64)> = config
        .n_values
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let cache = LogExCache {
        mode: config.pk_mode,
        values: Mutex::new(HashMap::new()),
    };
    pool()?.install(|| {
        jobs.par_iter()
            .map(|&(n, trial)| sweep_row(config, &cache, n, trial))
            .collect()
    })
}

fn sweep_row(config: &ExperimentConfig, cache: &LogExCache, n: u64, trial: u64) -> Result<SweepRow> {
    let seed = trial_seed(config.seed, n, trial);
    let g = sample_gnp(n as usize, 0.5, seed)?;
    let exact = match config.search {
        SearchMode::Auto => n as usize <= config.exact_cap,
        SearchMode::Exact => true,
        SearchMode::Heuristic => false,
    };
    let found = if exact {
        max_induced_regular_exact(&g, config.node_budget)
    } else {
        max_induced_regular_heuristic(&g, seed.derive(1), config.iteration_budget)
    };
    let k = nearest_feasible_k(found.size);
    Ok(SweepRow {
        n,
        trial,
        seed,
        observed_max_size: found.size,
        observed_r: found.r,
        optimal: found.optimal,
        bound_2n23: bound_2n23(n),
        k,
        log_ex: cache.get(n, k)?,
    })
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.trial,
            r.seed.0,
            r.observed_max_size,
            r.observed_r,
            r.optimal,
            fmt_float(r.bound_2n23),
            r.k,
            fmt_float(r.log_ex)
        );
    }
    out
}

pub const MOMENT_CSV_HEADER: &str = "n,k,mode,log_ex,t,log_variance_ratio_bound,log_sum_g";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentSummary {
    pub n: u64,
    pub k: u64,
    pub mode: PkiMode,
    pub log_ex: f64,
    pub t: Option<u64>,
    pub log_variance_ratio_bound: f64,
    pub log_sum_g: f64,
}

/// One variance profile per `(n, k)` with `k <= n`, in grid order.
pub fn run_moment_sweep(config: &ExperimentConfig) -> Result<Vec<MomentSummary>> {
    config.validate()?;
    if config.command != ExperimentKind::Moments {
        return Err(Error::config("command", "run_moment_sweep needs command = moments"));
    }
    let jobs: Vec<(u64, u64)> = config
        .n_values
        .iter()
        .flat_map(|&n| config.k_values.iter().filter(move |&&k| k <= n).map(move |&k| (n, k)))
        .collect();
    pool()?.install(|| {
        jobs.par_iter()
            .map(|&(n, k)| {
                let r = variance_bound_profile(n, k, config.pki_mode)?;
                Ok(MomentSummary {
                    n,
                    k,
                    mode: r.mode,
                    log_ex: r.log_ex,
                    t: r.t,
                    log_variance_ratio_bound: r.log_variance_ratio_bound,
                    log_sum_g: r.log_sum_g,
                })
            })
            .collect()
    })
}

pub fn moment_csv(rows: &[MomentSummary]) -> String {
    let mut out = String::from(MOMENT_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let mode = match r.mode {
            PkiMode::Exact => "exact",
            PkiMode::LemmaBound => "lemma-bound",
        };
        let t = r.t.map(|t| t.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            r.k,
            mode,
            fmt_float(r.log_ex),
            t,
            fmt_float(r.log_variance_ratio_bound),
            fmt_float(r.log_sum_g)
        );
    }
    out
}
