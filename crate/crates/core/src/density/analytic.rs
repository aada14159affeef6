//! The `C_k`, `C_inf` and `C_3` functions of independent-threshold sparcs
//! and the resulting bound on their density.
//!
//! All take the threshold law as a parameter; the general-`k` scheme uses
//! `F(z) = min(z / c, 1)`.

use alloc::format;

use super::ThresholdCdf;
use crate::error::{Error, Result};

fn check_pair(x1: f64, x2: f64) -> Result<()> {
    if !(x1 >= 0.0 && x2 >= 0.0 && x1 + x2 <= 1.0 + 1e-12) {
        return Err(Error::DomainError(format!("({x1}, {x2}) is not part of a simplex point")));
    }
    Ok(())
}

/// Density at `(x1, x2, c, ..., c)` with `c = (1 - x1 - x2) / (k - 2)`,
/// all `k` terminals slicing, for motion along the first two coordinates.
/// Conditioning on how many of the `k - 2` equal terminals precede the
/// cutting terminal gives an `O(k)` sum.
pub fn c_k(x1: f64, x2: f64, k: usize, f: &ThresholdCdf) -> Result<f64> {
    if k < 3 {
        return Err(Error::DomainError(format!("k = {k} is below 3")));
    }
    check_pair(x1, x2)?;
    let c = (1.0 - x1 - x2).max(0.0) / (k - 2) as f64;
    let u = 1.0 - f.cdf(c);
    let norm = (k * (k - 1)) as f64;
    // weight of q earlier terminals including the other aligned one,
    // and of q earlier terminals all from the tail
    let s = |other: f64| -> f64 {
        let mut acc = 0.0;
        let mut pow = 1.0; // u^q
        let mut pow_prev = 0.0; // u^(q-1)
        for q in 0..k {
            acc += other * q as f64 * pow_prev + (k - 1 - q) as f64 * pow;
            pow_prev = pow;
            pow *= u;
        }
        acc / norm
    };
    Ok(f.pdf(x1) * s(1.0 - f.cdf(x2)) + f.pdf(x2) * s(1.0 - f.cdf(x1)))
}

/// Below this, [`kernels`] uses power series.
pub const SERIES_BELOW: f64 = 0.1;

/// `(1 - e^-a) / a` and `(1 - (1 + a) e^-a) / a^2`.
fn kernels(a: f64) -> (f64, f64) {
    if a < SERIES_BELOW {
        // sum_n (-a)^n / (n+1)!  and  sum_n (-a)^n (n+1) / (n+2)!
        let (mut k1, mut k2) = (0.0, 0.0);
        let mut term = 1.0; // (-a)^n / (n+1)!
        for n in 0..16 {
            k1 += term;
            k2 += term * (n + 1) as f64 / (n + 2) as f64;
            term *= -a / (n + 2) as f64;
        }
        (k1, k2)
    } else {
        let e = libm::exp(-a);
        ((1.0 - e) / a, (1.0 - (1.0 + a) * e) / (a * a))
    }
}

/// Limit of [`c_k`] as `k` grows, with `a = (1 - x1 - x2) F'(0)`.
pub fn c_inf(x1: f64, x2: f64, f: &ThresholdCdf) -> f64 {
    let a = (1.0 - x1 - x2).max(0.0) * f.pdf_at_zero();
    let (k1, k2) = kernels(a);
    let (g1, g2) = (f.pdf(x1), f.pdf(x2));
    (g1 + g2) * k1 - (g1 * f.cdf(x2) + g2 * f.cdf(x1)) * k2
}

/// `C_3` when the third coordinate is past the support of `F`, so that
/// terminal 3 swallows the point whenever it precedes the cutting one.
pub fn c3(x1: f64, x2: f64, f: &ThresholdCdf) -> Result<f64> {
    check_pair(x1, x2)?;
    let x3 = 1.0 - x1 - x2;
    if x3 < f.support_end() - 1e-12 {
        return Err(Error::DomainError(format!(
            "x1 + x2 = {} exceeds {}",
            x1 + x2,
            1.0 - f.support_end()
        )));
    }
    Ok((f.pdf(x1) * (3.0 - f.cdf(x2)) + f.pdf(x2) * (3.0 - f.cdf(x1))) / 6.0)
}

/// Bound on the density at `(x1, x2, ...)` over all completions: the larger
/// of [`c_k`] and, when the rest can sit in one corner, [`c3`].
pub fn d_bound(x1: f64, x2: f64, k: usize, f: &ThresholdCdf) -> Result<f64> {
    let ck = c_k(x1, x2, k, f)?;
    match c3(x1, x2, f) {
        Ok(v) => Ok(ck.max(v)),
        Err(_) => Ok(ck),
    }
}

/// `C_inf` with both coordinates below the corner, as a function of `a`.
/// It depends on `x1 + x2` only.
pub fn c_inf_case1(a: f64, f: &ThresholdCdf) -> f64 {
    let s = 1.0 - a / f.pdf_at_zero();
    c_inf(s / 2.0, s / 2.0, f)
}

/// `d/da` of [`c_inf_case1`], by central differences.
pub fn c_inf_case1_derivative(a: f64, f: &ThresholdCdf) -> f64 {
    let h = 1e-5;
    (c_inf_case1(a + h, f) - c_inf_case1(a - h, f)) / (2.0 * h)
}

/// `C_inf` with `x1` past the corner (`F'(x1) = 0`, `F(x1) = 1`) and `x2`
/// below it.
pub fn c_inf_case2(a: f64, f: &ThresholdCdf) -> f64 {
    let (k1, k2) = kernels(a);
    f.pdf_at_zero() * (k1 - k2)
}

/// Location and value of a numerical maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub a: f64,
    pub value: f64,
    /// Best value on the grid before refinement.
    pub grid_value: f64,
}

/// Grid step of [`case1_peak`] and [`case2_max`].
pub const PEAK_GRID_STEP: f64 = 1e-4;

fn grid_max(hi: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let steps = libm::ceil(hi / PEAK_GRID_STEP) as usize;
    let mut best = (0.0, g(0.0));
    for s in 1..=steps {
        let a = (s as f64 * PEAK_GRID_STEP).min(hi);
        let v = g(a);
        if v > best.1 {
            best = (a, v);
        }
    }
    best
}

/// Maximum of [`c_inf_case1`] over `a` in `[0, F'(0)]`: a grid pass, then
/// golden-section search around the best grid point.
pub fn case1_peak(f: &ThresholdCdf) -> Peak {
    let hi = f.pdf_at_zero();
    let g = |a: f64| c_inf_case1(a, f);
    let (a0, v0) = grid_max(hi, g);
    let (mut lo, mut up) = ((a0 - PEAK_GRID_STEP).max(0.0), (a0 + PEAK_GRID_STEP).min(hi));
    let phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = up - phi * (up - lo);
    let mut d = lo + phi * (up - lo);
    for _ in 0..100 {
        if g(c) > g(d) {
            up = d;
        } else {
            lo = c;
        }
        c = up - phi * (up - lo);
        d = lo + phi * (up - lo);
    }
    let a = (lo + up) / 2.0;
    let v = g(a);
    if v >= v0 {
        Peak { a, value: v, grid_value: v0 }
    } else {
        Peak { a: a0, value: v0, grid_value: v0 }
    }
}

/// Maximum of [`c_inf_case2`] on the `a` grid over `[0, F'(0)]`.
pub fn case2_max(f: &ThresholdCdf) -> Peak {
    let (a, v) = grid_max(f.pdf_at_zero(), |a| c_inf_case2(a, f));
    Peak { a, value: v, grid_value: v }
}
