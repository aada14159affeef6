//! Cutting densities.
//!
//! The density of a scheme on a segment is the expected number of cut
//! events on it divided by its length; its supremum over segments bounds
//! the approximation ratio of rounding with that scheme.

mod analytic;
mod exact;
mod scan;

pub use analytic::*;
pub use exact::*;
pub use scan::*;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{require_alignment, Alignment, Segment};
use crate::rng::RngState;
use crate::schemes::SchemeConfig;

/// Values closer than this to a cdf breakpoint count as on it.
pub const BREAKPOINT_TOL: f64 = 1e-12;
/// Fewest trials accepted by [`mc_density`].
pub const MIN_TRIALS: usize = 100;

/// Distribution of one slice threshold, given by a piecewise-constant
/// density on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCdf {
    breakpoints: Vec<f64>,
    densities: Vec<f64>,
}

impl ThresholdCdf {
    /// `densities[p]` applies on `[breakpoints[p], breakpoints[p + 1])`.
    pub fn new(breakpoints: Vec<f64>, densities: Vec<f64>) -> Result<Self> {
        if breakpoints.len() < 2 || densities.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} breakpoints need {} densities, got {}",
                breakpoints.len(),
                breakpoints.len().saturating_sub(1),
                densities.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) || breakpoints[0] < 0.0 || breakpoints[breakpoints.len() - 1] > 1.0 {
            return Err(Error::InvalidDistribution("breakpoints must increase within [0, 1]".into()));
        }
        if densities.iter().any(|d| !(*d >= 0.0) || !d.is_finite()) {
            return Err(Error::InvalidDistribution("densities must be finite and nonnegative".into()));
        }
        let f = ThresholdCdf { breakpoints, densities };
        let mass = f.cdf(1.0);
        if mass > 1.0 + 1e-12 {
            return Err(Error::InvalidDistribution(format!("total mass {mass} exceeds 1")));
        }
        Ok(f)
    }

    /// `U(0, 1]`.
    pub fn uniform() -> Self {
        ThresholdCdf {
            breakpoints: vec![0.0, 1.0],
            densities: vec![1.0],
        }
    }

    /// `U(0, c]`, i.e. `F(z) = min(z / c, 1)`.
    pub fn uniform_to(c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidDistribution(format!("support end {c} outside (0, 1]")));
        }
        if c == 1.0 {
            return Ok(Self::uniform());
        }
        ThresholdCdf::new(vec![0.0, c, 1.0], vec![1.0 / c, 0.0])
    }

    /// Uniform on `[lo, hi]`.
    pub fn uniform_on(lo: f64, hi: f64) -> Result<Self> {
        if !(0.0 <= lo && lo < hi && hi <= 1.0) {
            return Err(Error::InvalidDistribution(format!("[{lo}, {hi}] is not a subinterval of [0, 1]")));
        }
        let mut b = Vec::new();
        let mut d = Vec::new();
        if lo > 0.0 {
            b.push(0.0);
            d.push(0.0);
        }
        b.push(lo);
        d.push(1.0 / (hi - lo));
        b.push(hi);
        if hi < 1.0 {
            d.push(0.0);
            b.push(1.0);
        }
        ThresholdCdf::new(b, d)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn densities(&self) -> &[f64] {
        &self.densities
    }

    /// `P(rho <= z)`.
    pub fn cdf(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for (p, &d) in self.densities.iter().enumerate() {
            let (lo, hi) = (self.breakpoints[p], self.breakpoints[p + 1]);
            if z <= lo {
                break;
            }
            acc += d * (z.min(hi) - lo);
        }
        acc
    }

    /// Density on the piece `[b_p, b_{p+1})` holding `z`; the last piece is
    /// closed at 1.
    pub fn pdf(&self, z: f64) -> f64 {
        let n = self.densities.len();
        for p in 0..n {
            let hi = self.breakpoints[p + 1];
            if z >= self.breakpoints[p] && (z < hi || (p + 1 == n && z <= hi)) {
                return self.densities[p];
            }
        }
        0.0
    }

    /// `F'(0)`.
    pub fn pdf_at_zero(&self) -> f64 {
        self.pdf(0.0)
    }

    /// Points in `(0, 1)` where the density jumps.
    pub fn interior_breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let n = self.densities.len();
        for p in 0..=n {
            let b = self.breakpoints[p];
            if b <= 0.0 || b >= 1.0 {
                continue;
            }
            let left = if p == 0 { 0.0 } else { self.densities[p - 1] };
            let right = if p == n { 0.0 } else { self.densities[p] };
            if left != right {
                out.push(b);
            }
        }
        out
    }

    pub fn is_breakpoint(&self, z: f64) -> bool {
        self.interior_breakpoints().iter().any(|b| (z - b).abs() < BREAKPOINT_TOL)
    }

    /// Smallest `z` with `F(z)` equal to the total mass.
    pub fn support_end(&self) -> f64 {
        let mut end = self.breakpoints[0];
        for (p, &d) in self.densities.iter().enumerate() {
            if d > 0.0 {
                end = self.breakpoints[p + 1];
            }
        }
        end
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityMethod {
    Exact,
    MonteCarlo,
}

/// Density of one segment.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityEstimate {
    pub mean: f64,
    /// Zero for exact values.
    pub stderr: f64,
    /// Zero for exact values.
    pub trials: usize,
    pub segment: Segment,
    pub alignment: Alignment,
    pub method: DensityMethod,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub entries: Vec<DensityEstimate>,
    pub max_density: f64,
    pub argmax: usize,
}

impl DensityReport {
    pub fn from_entries(entries: Vec<DensityEstimate>) -> Result<Self> {
        let mut argmax = None;
        let mut max_density = f64::NEG_INFINITY;
        for (idx, e) in entries.iter().enumerate() {
            if e.mean > max_density {
                max_density = e.mean;
                argmax = Some(idx);
            }
        }
        let argmax = argmax.ok_or_else(|| Error::InvalidConfig("empty density scan".into()))?;
        Ok(DensityReport {
            entries,
            max_density,
            argmax,
        })
    }

    pub fn argmax_entry(&self) -> &DensityEstimate {
        &self.entries[self.argmax]
    }
}

/// Monte-Carlo density: average cut events per trial, over `|e|`.
pub fn mc_density(cfg: &SchemeConfig, e: &Segment, trials: usize, rng: &mut RngState) -> Result<DensityEstimate> {
    let al = require_alignment(e)?;
    if trials < MIN_TRIALS {
        return Err(Error::InvalidConfig(format!("{trials} trials, need at least {MIN_TRIALS}")));
    }
    cfg.validate()?;
    if cfg.k() != e.k() {
        return Err(Error::DimensionMismatch {
            expected: e.k(),
            found: cfg.k(),
        });
    }
    let len = e.length();
    if len <= 0.0 {
        return Err(Error::ZeroLengthSegment);
    }
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let c = cfg.sample(rng).crossings(e, al) as f64;
        s1 += c;
        s2 += c * c;
    }
    let n = trials as f64;
    let mean = s1 / n;
    let var = ((s2 - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(DensityEstimate {
        mean: mean / len,
        stderr: libm::sqrt(var / n) / len,
        trials,
        segment: e.clone(),
        alignment: al,
        method: DensityMethod::MonteCarlo,
    })
}
