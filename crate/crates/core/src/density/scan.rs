//! Density scans over a barycentric grid.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{exact_estimate, mc_density, DensityEstimate, DensityReport};
use crate::error::{Error, Result};
use crate::geometry::{Alignment, Segment, SimplexPoint};
use crate::rng::RngState;
use crate::schemes::SchemeConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMethod {
    /// Exact where an evaluator exists, Monte-Carlo otherwise.
    Auto,
    Exact,
    MonteCarlo,
}

/// Whether [`super::segment_density`] handles `cfg`.
pub fn has_exact(cfg: &SchemeConfig) -> bool {
    match cfg {
        SchemeConfig::Mixture(parts) => parts.iter().all(|(_, c)| has_exact(c)),
        _ => true,
    }
}

/// Grid points `a / grid_res` of the `k`-simplex, as integer vectors
/// summing to `grid_res`. With `sorted_tail`, coordinates `2..k` are
/// nondecreasing.
pub fn grid_points(k: usize, grid_res: usize, sorted_tail: bool) -> Vec<Vec<usize>> {
    fn rec(k: usize, left: usize, min: usize, sorted_tail: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let pos = cur.len();
        if pos + 1 == k {
            if !(sorted_tail && pos >= 2 && left < min) {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let lo = if sorted_tail && pos >= 2 { min } else { 0 };
        for v in lo..=left {
            cur.push(v);
            let next_min = if sorted_tail && pos >= 2 { v } else { 0 };
            rec(k, left - v, next_min, sorted_tail, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, grid_res, 0, sorted_tail, &mut Vec::with_capacity(k), &mut out);
    out
}

/// An `al`-aligned segment of length `eps` centered at `x`, shifted to stay
/// in the simplex; `None` when `x_i + x_j < eps`.
pub fn centered_segment(x: &[f64], al: Alignment, eps: f64) -> Option<Segment> {
    let (i, j) = (al.i(), al.j());
    let s = x[i] + x[j];
    if s < eps {
        return None;
    }
    let lo = (x[i] - eps / 2.0).max(0.0).min(s - eps);
    let mut a = x.to_vec();
    let mut b = x.to_vec();
    a[i] = lo;
    a[j] = s - lo;
    b[i] = lo + eps;
    b[j] = (s - lo - eps).max(0.0);
    let a = SimplexPoint::new(a).ok()?;
    let b = SimplexPoint::new(b).ok()?;
    Segment::new(a, b).ok()
}

/// Segments of a scan, in a fixed order: grid points in lexicographic
/// order, then alignments. Symmetric schemes use only the `0,1` alignment
/// with nondecreasing tail coordinates.
pub fn scan_segments(cfg: &SchemeConfig, k: usize, grid_res: usize, eps: f64) -> Result<Vec<Segment>> {
    if grid_res < 4 {
        return Err(Error::InvalidConfig(format!("grid resolution {grid_res} is below 4")));
    }
    if !(eps > 0.0 && eps <= 1.0 / (4 * grid_res) as f64 + 1e-15) {
        return Err(Error::InvalidConfig(format!("eps = {eps} must lie in (0, 1/(4 grid)]")));
    }
    cfg.validate()?;
    if cfg.k() != k {
        return Err(Error::DimensionMismatch { expected: k, found: cfg.k() });
    }
    let symmetric = cfg.is_symmetric();
    let alignments = if symmetric {
        vec![Alignment::new(0, 1)?]
    } else {
        Alignment::all(k)
    };
    let g = grid_res as f64;
    let mut out = Vec::new();
    for a in grid_points(k, grid_res, symmetric) {
        let x: Vec<f64> = a.iter().map(|&v| v as f64 / g).collect();
        for &al in &alignments {
            if let Some(e) = centered_segment(&x, al, eps) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// Density of one scan segment; Monte-Carlo runs draw from `rng`.
pub fn scan_one(
    cfg: &SchemeConfig,
    e: &Segment,
    method: ScanMethod,
    trials: usize,
    rng: &mut RngState,
) -> Result<DensityEstimate> {
    let exact = match method {
        ScanMethod::Auto => has_exact(cfg),
        ScanMethod::Exact => true,
        ScanMethod::MonteCarlo => false,
    };
    if exact {
        exact_estimate(cfg, e)
    } else {
        mc_density(cfg, e, trials, rng)
    }
}

/// [`max_density_scan_with`] using exact evaluators where available.
pub fn max_density_scan(
    cfg: &SchemeConfig,
    k: usize,
    grid_res: usize,
    eps: f64,
    trials: usize,
    rng: &RngState,
) -> Result<DensityReport> {
    max_density_scan_with(cfg, k, grid_res, eps, trials, ScanMethod::Auto, rng)
}

/// Segment `s` of the scan draws from `rng.fork(s)`, so results do not
/// depend on evaluation order.
pub fn max_density_scan_with(
    cfg: &SchemeConfig,
    k: usize,
    grid_res: usize,
    eps: f64,
    trials: usize,
    method: ScanMethod,
    rng: &RngState,
) -> Result<DensityReport> {
    let segs = scan_segments(cfg, k, grid_res, eps)?;
    let mut entries = Vec::with_capacity(segs.len());
    for (s, e) in segs.iter().enumerate() {
        entries.push(scan_one(cfg, e, method, trials, &mut rng.fork(s as u64))?);
    }
    DensityReport::from_entries(entries)
}
