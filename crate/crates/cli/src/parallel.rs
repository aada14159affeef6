//! Multi-threaded density scans and rounding repetitions.
//!
//! Each shard (scan segment, rounding repetition) draws from its own
//! forked stream and results are reduced in shard order, so outputs match
//! the sequential drivers whatever the thread count.

use mwc_core::density::{scan_one, scan_segments, DensityReport, ScanMethod};
use mwc_core::graph::Labeling;
use mwc_core::relaxation::AlignedInstance;
use mwc_core::schemes::{round_once, SchemeConfig};
use mwc_core::{Error, RngState, Scalar};
use rayon::prelude::*;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "MWC_THREADS";

/// Worker count: `MWC_THREADS` if set to a positive integer, capped by the
/// available parallelism.
pub fn thread_count() -> usize {
    let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(n) if n > 0 => n.min(avail),
        _ => avail,
    }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool")
}

/// Same result as [`mwc_core::density::max_density_scan_with`].
#[allow(clippy::too_many_arguments)]
pub fn par_density_scan(
    cfg: &SchemeConfig,
    k: usize,
    grid_res: usize,
    eps: f64,
    trials: usize,
    method: ScanMethod,
    rng: &RngState,
    threads: usize,
) -> Result<DensityReport, Error> {
    let segs = scan_segments(cfg, k, grid_res, eps)?;
    let entries = pool(threads).install(|| {
        segs.par_iter()
            .enumerate()
            .map(|(s, e)| scan_one(cfg, e, method, trials, &mut rng.fork(s as u64)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    DensityReport::from_entries(entries)
}

/// Best of `repetitions` roundings, repetition `r` drawing from
/// `rng.fork(r)`; ties keep the lowest `r`.
pub fn par_round<T: Scalar + Send + Sync>(
    cfg: &SchemeConfig,
    inst: &AlignedInstance<T>,
    rng: &RngState,
    repetitions: usize,
    threads: usize,
) -> Result<(Labeling, T), Error> {
    cfg.validate()?;
    if cfg.k() != inst.graph().k() {
        return Err(Error::DimensionMismatch {
            expected: inst.graph().k(),
            found: cfg.k(),
        });
    }
    let runs = pool(threads).install(|| {
        (0..repetitions.max(1))
            .into_par_iter()
            .map(|r| round_once(cfg, inst, &mut rng.fork(r as u64)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut best: Option<(Labeling, T)> = None;
    for (lab, cost) in runs {
        if best.as_ref().map_or(true, |(_, b)| cost < *b) {
            best = Some((lab, cost));
        }
    }
    Ok(best.expect("at least one repetition"))
}
