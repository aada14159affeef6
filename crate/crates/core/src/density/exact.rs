//! Exact pointwise and segment densities.
//!
//! A slice of terminal `l` at `rho_l = x_l` cuts an `i,j`-aligned segment
//! through `x` (for `l` in `{i, j}`) when `l` has a slice and every earlier
//! terminal `h` in the order has `rho_h > x_h`. Averaging over orders gives
//! pointwise densities. Along a piece with no breakpoints the pointwise
//! density is linear, so a segment's density is the length-weighted sum of
//! its pieces' midpoint densities.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{DensityEstimate, DensityMethod, ThresholdCdf, BREAKPOINT_TOL};
use crate::error::{Error, Result};
use crate::geometry::{require_alignment, subdivide_at_thresholds, Alignment, Segment, SimplexPoint};
use crate::schemes::{slices, SchemeConfig};
use crate::search::{permutations, DiscreteDistribution};

/// Largest `k` for [`permutation_sum_density`].
pub const MAX_ENUMERATION_K: usize = 10;

/// `q! (k-1-q)! / k!`: probability that a given terminal sits at position
/// `q` with a given set of `q` others ahead of it.
fn position_weight(k: usize, q: usize) -> f64 {
    // 1 / (k * C(k-1, q))
    let mut c = 1.0f64;
    for t in 0..q {
        c = c * (k - 1 - t) as f64 / (t + 1) as f64;
    }
    1.0 / (k as f64 * c)
}

/// Elementary symmetric polynomials `e_0..e_n` of `vals`.
fn elementary_symmetric(vals: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; vals.len() + 1];
    e[0] = 1.0;
    for (n, &v) in vals.iter().enumerate() {
        for q in (1..=n + 1).rev() {
            e[q] += v * e[q - 1];
        }
    }
    e
}

fn check_point(k: usize, x: &SimplexPoint, al: Alignment) -> Result<()> {
    if x.k() != k {
        return Err(Error::DimensionMismatch { expected: k, found: x.k() });
    }
    if al.j() >= k {
        return Err(Error::InvalidConfig(format!("alignment {:?} out of range for k = {k}", al.pair())));
    }
    Ok(())
}

fn check_cdf_breakpoints(fs: &[ThresholdCdf], x: &SimplexPoint, al: Alignment) -> Result<()> {
    for l in al.pair() {
        if fs[l].is_breakpoint(x[l]) {
            return Err(Error::BreakpointAtEvaluationPoint { coord: l, value: x[l] });
        }
    }
    Ok(())
}

/// Independent thresholds `rho_h ~ fs[h]`, uniformly random order; the
/// last terminal slices only when `use_last_slice`.
pub fn exact_sparc_density(
    k: usize,
    fs: &[ThresholdCdf],
    use_last_slice: bool,
    x: &SimplexPoint,
    al: Alignment,
) -> Result<f64> {
    check_point(k, x, al)?;
    if fs.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: fs.len() });
    }
    check_cdf_breakpoints(fs, x, al)?;
    let positions = slices(k, use_last_slice);
    let mut total = 0.0;
    for l in al.pair() {
        let g = fs[l].pdf(x[l]);
        if g == 0.0 {
            continue;
        }
        let survive: Vec<f64> = (0..k).filter(|&h| h != l).map(|h| 1.0 - fs[h].cdf(x[h])).collect();
        let e = elementary_symmetric(&survive);
        let s: f64 = (0..positions).map(|q| position_weight(k, q) * e[q]).sum();
        total += g * s;
    }
    Ok(total)
}

/// Density of one sparc family with a fixed order: `fs[h]` is the
/// threshold law of terminal `h`, and the first `slice_count` terminals of
/// `order` slice.
pub fn fixed_order_density(
    order: &[usize],
    fs: &[ThresholdCdf],
    slice_count: usize,
    x: &SimplexPoint,
    al: Alignment,
) -> Result<f64> {
    let k = order.len();
    check_point(k, x, al)?;
    if fs.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: fs.len() });
    }
    check_cdf_breakpoints(fs, x, al)?;
    let mut total = 0.0;
    let mut survive = 1.0;
    for &l in &order[..slice_count.min(k)] {
        if al.contains(l) {
            total += fs[l].pdf(x[l]) * survive;
        }
        survive *= 1.0 - fs[l].cdf(x[l]);
        if survive == 0.0 {
            break;
        }
    }
    Ok(total)
}

/// The same density as [`exact_sparc_density`], by summing all `k!`
/// orders. Used as an oracle.
pub fn permutation_sum_density(
    k: usize,
    fs: &[ThresholdCdf],
    use_last_slice: bool,
    x: &SimplexPoint,
    al: Alignment,
) -> Result<f64> {
    if k > MAX_ENUMERATION_K {
        return Err(Error::TooLarge(format!("k = {k} exceeds {MAX_ENUMERATION_K} for enumeration")));
    }
    let orders = permutations(k);
    let mut total = 0.0;
    for o in &orders {
        total += fixed_order_density(o, fs, slices(k, use_last_slice), x, al)?;
    }
    Ok(total / orders.len() as f64)
}

/// CKR with `k - 1` slices at one `rho ~ U(0, 1]`. Terminal `l` cuts when
/// every terminal ahead of it has a smaller coordinate, so with
/// `L = #{h != l : x_h < x_l}` the density is
/// `sum_l sum_{q <= min(L, k-2)} C(L, q) q! (k-1-q)! / k!`.
pub fn ckr_density(k: usize, x: &SimplexPoint, al: Alignment) -> Result<f64> {
    check_point(k, x, al)?;
    let c = x.coords();
    for l in al.pair() {
        for h in 0..k {
            if h != l && (c[h] - c[l]).abs() < BREAKPOINT_TOL {
                return Err(Error::BreakpointAtEvaluationPoint { coord: l, value: c[l] });
            }
        }
    }
    let mut total = 0.0;
    for l in al.pair() {
        let below = (0..k).filter(|&h| h != l && c[h] < c[l]).count();
        let mut binom = 1.0f64;
        for q in 0..=below.min(k - 2) {
            total += binom * position_weight(k, q);
            binom = binom * (below - q) as f64 / (q + 1) as f64;
        }
    }
    Ok(total)
}

/// Per-coordinate values where the CKR density changes along `e`.
fn ckr_cut_values(e: &Segment, al: Alignment) -> Vec<Vec<f64>> {
    let k = e.k();
    let x = e.start().coords();
    let mut out = vec![Vec::new(); k];
    let half = (x[al.i()] + x[al.j()]) / 2.0;
    for l in al.pair() {
        out[l] = (0..k).filter(|&h| !al.contains(h)).map(|h| x[h]).collect();
        out[l].push(half);
    }
    out
}

const BALL_EDGE: f64 = 2.0 / 3.0;

/// Ball/corner scheme. The ball cut's rays on line `x_l = r_l` hit a point
/// with `x_l < 2/3` at rate `(3/2) (1/2)`; the corner cut slices at
/// `rho ~ U(2/3, 1]` for two of the three terminals.
pub fn ball_corner_density(ball_prob: f64, x: &SimplexPoint, al: Alignment) -> Result<f64> {
    check_point(3, x, al)?;
    let mut total = 0.0;
    for l in al.pair() {
        let v = x[l];
        if (v - BALL_EDGE).abs() < BREAKPOINT_TOL {
            return Err(Error::BreakpointAtEvaluationPoint { coord: l, value: v });
        }
        total += if v < BALL_EDGE {
            ball_prob * 0.75
        } else {
            (1.0 - ball_prob) * 2.0
        };
    }
    Ok(total)
}

/// Joint corner cut at one `rho ~ U[corner_at, 1]` in random order.
/// Corners are disjoint, so only a terminal without a slice fails to cut.
fn corner_density(k: usize, corner_at: f64, use_last_slice: bool, x: &SimplexPoint, al: Alignment) -> f64 {
    let eligible = if use_last_slice { 1.0 } else { (k - 1) as f64 / k as f64 };
    al.pair()
        .iter()
        .filter(|&&l| x[l] > corner_at)
        .count() as f64
        * eligible
        / (1.0 - corner_at)
}

/// Mixture of independent `U(0, corner_at]` thresholds (weight
/// `icut_prob`) and the joint corner cut.
pub fn icut_corner_density(
    k: usize,
    corner_at: f64,
    icut_prob: f64,
    use_last_slice: bool,
    x: &SimplexPoint,
    al: Alignment,
) -> Result<f64> {
    check_point(k, x, al)?;
    let f = ThresholdCdf::uniform_to(corner_at)?;
    let fs = vec![f; k];
    let icut = exact_sparc_density(k, &fs, use_last_slice, x, al)?;
    Ok(icut_prob * icut + (1.0 - icut_prob) * corner_density(k, corner_at, use_last_slice, x, al))
}

/// [`icut_corner_density`] for an `IcutCorner` configuration; points on
/// the corner threshold are rejected.
pub fn combined_icut_corner_density(cfg: &SchemeConfig, x: &SimplexPoint, al: Alignment) -> Result<f64> {
    let SchemeConfig::IcutCorner {
        k,
        corner_at,
        icut_prob,
        use_last_slice,
    } = *cfg
    else {
        return Err(Error::InvalidConfig("expected an IcutCorner scheme".into()));
    };
    cfg.validate()?;
    match icut_corner_density(k, corner_at, icut_prob, use_last_slice, x, al) {
        Err(Error::BreakpointAtEvaluationPoint { .. }) => Err(Error::StraddlesCorner),
        r => r,
    }
}

/// Same as [`combined_icut_corner_density`] for a segment that must lie on
/// one side of `corner_at` in both moving coordinates.
pub fn combined_icut_corner_segment_density(cfg: &SchemeConfig, e: &Segment) -> Result<f64> {
    let SchemeConfig::IcutCorner { corner_at, .. } = *cfg else {
        return Err(Error::InvalidConfig("expected an IcutCorner scheme".into()));
    };
    let al = require_alignment(e)?;
    for l in al.pair() {
        if e.proj_min(l) < corner_at - BREAKPOINT_TOL && e.proj_max(l) > corner_at + BREAKPOINT_TOL {
            return Err(Error::StraddlesCorner);
        }
    }
    combined_icut_corner_density(cfg, &e.midpoint(), al)
}

/// Discrete sparcs: position `m` of the random order slices uniformly in
/// box `q_m`.
pub fn discrete_density(d: &DiscreteDistribution, x: &SimplexPoint, al: Alignment) -> Result<f64> {
    let (k, n) = (d.k(), d.n());
    check_point(k, x, al)?;
    for l in al.pair() {
        let s = x[l] * n as f64;
        let r = libm::round(s);
        if r > 0.0 && r < n as f64 && (s - r).abs() < BREAKPOINT_TOL * n as f64 {
            return Err(Error::BreakpointAtEvaluationPoint { coord: l, value: x[l] });
        }
    }
    let orders = permutations(k);
    let boxes: Vec<ThresholdCdf> = (0..n)
        .map(|q| ThresholdCdf::uniform_on(q as f64 / n as f64, (q + 1) as f64 / n as f64))
        .collect::<Result<_>>()?;
    let mut total = 0.0;
    for entry in d.entries() {
        let mut sum = 0.0;
        for o in &orders {
            // the last terminal never slices; its law is irrelevant
            let mut fs = vec![ThresholdCdf::uniform(); k];
            for (m, &qm) in entry.sparc.q.iter().enumerate() {
                fs[o[m]] = boxes[qm].clone();
            }
            sum += fixed_order_density(o, &fs, k - 1, x, al)?;
        }
        total += entry.p * sum / orders.len() as f64;
    }
    Ok(total)
}

/// Pointwise density of any scheme at `x` for `i,j`-aligned motion.
pub fn point_density(cfg: &SchemeConfig, x: &SimplexPoint, al: Alignment) -> Result<f64> {
    match cfg {
        SchemeConfig::Ckr { k } => ckr_density(*k, x, al),
        SchemeConfig::IndependentUniform { k, use_last_slice } => {
            exact_sparc_density(*k, &vec![ThresholdCdf::uniform(); *k], *use_last_slice, x, al)
        }
        // both variants have the same ray marginals
        SchemeConfig::BallCorner { ball_prob, .. } => ball_corner_density(*ball_prob, x, al),
        SchemeConfig::IcutCorner {
            k,
            corner_at,
            icut_prob,
            use_last_slice,
        } => icut_corner_density(*k, *corner_at, *icut_prob, *use_last_slice, x, al),
        SchemeConfig::Discrete(d) => discrete_density(d, x, al),
        SchemeConfig::Mixture(parts) => {
            let mut total = 0.0;
            for (w, c) in parts {
                total += w * point_density(c, x, al)?;
            }
            Ok(total)
        }
    }
}

/// Per-coordinate values at which the pointwise density of `cfg` may stop
/// being linear along `e`.
pub fn cut_values(cfg: &SchemeConfig, e: &Segment, al: Alignment) -> Vec<Vec<f64>> {
    let k = e.k();
    let same = |vals: Vec<f64>| -> Vec<Vec<f64>> { vec![vals; k] };
    match cfg {
        SchemeConfig::Ckr { .. } => ckr_cut_values(e, al),
        SchemeConfig::IndependentUniform { .. } => vec![Vec::new(); k],
        SchemeConfig::BallCorner { .. } => same(vec![BALL_EDGE]),
        SchemeConfig::IcutCorner { corner_at, .. } => same(vec![*corner_at]),
        SchemeConfig::Discrete(d) => same((1..d.n()).map(|m| m as f64 / d.n() as f64).collect()),
        SchemeConfig::Mixture(parts) => {
            let mut out = vec![Vec::new(); k];
            for (_, c) in parts {
                for (l, vals) in cut_values(c, e, al).into_iter().enumerate() {
                    out[l].extend(vals);
                }
            }
            out
        }
    }
}

/// Exact densities of the pieces of `e` between breakpoints, as
/// `(piece, density)`.
pub fn piece_densities(cfg: &SchemeConfig, e: &Segment) -> Result<Vec<(Segment, f64)>> {
    let al = require_alignment(e)?;
    cfg.validate()?;
    if cfg.k() != e.k() {
        return Err(Error::DimensionMismatch {
            expected: e.k(),
            found: cfg.k(),
        });
    }
    let pieces = subdivide_at_thresholds(e, &cut_values(cfg, e, al))?;
    // slivers left by nearly coincident breakpoints carry no weight but
    // would put their midpoint on a breakpoint
    let min_len = e.length() * 1e-10;
    let mut out = Vec::with_capacity(pieces.len());
    for p in pieces {
        if p.length() <= min_len {
            continue;
        }
        let d = point_density(cfg, &p.midpoint(), al)?;
        out.push((p, d));
    }
    Ok(out)
}

/// Exact density of a whole segment.
pub fn segment_density(cfg: &SchemeConfig, e: &Segment) -> Result<f64> {
    let len = e.length();
    if len <= 0.0 {
        return Err(Error::ZeroLengthSegment);
    }
    let pieces = piece_densities(cfg, e)?;
    Ok(pieces.iter().map(|(p, d)| p.length() * d).sum::<f64>() / len)
}

/// [`segment_density`] packaged as an estimate.
pub fn exact_estimate(cfg: &SchemeConfig, e: &Segment) -> Result<DensityEstimate> {
    let al = require_alignment(e)?;
    Ok(DensityEstimate {
        mean: segment_density(cfg, e)?,
        stderr: 0.0,
        trials: 0,
        segment: e.clone(),
        alignment: al,
        method: DensityMethod::Exact,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::aligned;
    use super::*;
    use crate::density::mc_density;
    use crate::geometry::subdivide_at_thresholds;
    use crate::rng::RngState;
    use crate::schemes::{BALL_PROB, ICUT_CORNER};
    use proptest::prelude::*;

    fn pt(c: &[f64]) -> SimplexPoint {
        SimplexPoint::new(c.to_vec()).unwrap()
    }

    fn al(i: usize, j: usize) -> Alignment {
        Alignment::new(i, j).unwrap()
    }

    fn icut_fs(k: usize) -> Vec<ThresholdCdf> {
        vec![ThresholdCdf::uniform_to(ICUT_CORNER).unwrap(); k]
    }

    fn random_point(rng: &mut RngState, k: usize) -> SimplexPoint {
        let raw: Vec<f64> = (0..k).map(|_| -libm::log(rng.uniform_open())).collect();
        let s: f64 = raw.iter().sum();
        pt(&raw.iter().map(|v| v / s).collect::<Vec<_>>())
    }

    #[test]
    fn position_weights_sum_to_one_over_sets() {
        for k in 2..12 {
            let mut total = 0.0;
            let mut c = 1.0;
            for q in 0..k {
                total += c * position_weight(k, q);
                c = c * (k - 1 - q) as f64 / (q + 1) as f64;
            }
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn icut_worked_values() {
        let x = pt(&[0.0, 0.0, 1.0]);
        let d = exact_sparc_density(3, &icut_fs(3), true, &x, al(0, 1)).unwrap();
        assert!((d - 11.0 / 6.0).abs() < 1e-12);
        assert!((permutation_sum_density(3, &icut_fs(3), true, &x, al(0, 1)).unwrap() - d).abs() < 1e-12);
        let x = pt(&[0.2, 0.2, 0.6]);
        let d = exact_sparc_density(3, &icut_fs(3), true, &x, al(0, 1)).unwrap();
        assert!((d - 11.0 / 36.0 * (6.0 - 11.0 / 6.0 * 0.4)).abs() < 1e-12);
    }

    #[test]
    fn zero_when_both_past_corner() {
        let y = pt(&[0.56, 0.0, 0.44, 0.0]);
        let fs2 = vec![ThresholdCdf::uniform_to(0.4).unwrap(); 4];
        assert_eq!(exact_sparc_density(4, &fs2, true, &y, al(0, 2)).unwrap(), 0.0);
    }

    #[test]
    fn breakpoints_are_rejected() {
        let x = pt(&[ICUT_CORNER, 1.0 - ICUT_CORNER, 0.0]);
        assert!(matches!(
            exact_sparc_density(3, &icut_fs(3), true, &x, al(0, 1)),
            Err(Error::BreakpointAtEvaluationPoint { coord: 0, .. })
        ));
        let cfg = SchemeConfig::icut_corner(3);
        assert_eq!(combined_icut_corner_density(&cfg, &x, al(0, 1)), Err(Error::StraddlesCorner));
        let e = aligned(&[ICUT_CORNER, 1.0 - ICUT_CORNER - 0.1, 0.1], [0, 1], 1e-3);
        assert_eq!(combined_icut_corner_segment_density(&cfg, &e), Err(Error::StraddlesCorner));
        let x = pt(&[0.3, 0.3, 0.4]);
        assert!(ckr_density(3, &x, al(0, 1)).is_err());
    }

    #[test]
    fn enumeration_matches_dp() {
        let mut rng = RngState::new(11, 0);
        for k in 2..=7 {
            for _ in 0..30 {
                let x = random_point(&mut rng, k);
                let a = al(0, k - 1);
                let fs: Vec<ThresholdCdf> = (0..k)
                    .map(|_| ThresholdCdf::uniform_to(0.3 + 0.7 * rng.uniform()).unwrap())
                    .collect();
                for last in [false, true] {
                    let dp = exact_sparc_density(k, &fs, last, &x, a).unwrap();
                    let en = permutation_sum_density(k, &fs, last, &x, a).unwrap();
                    assert!((dp - en).abs() < 1e-12, "k={k}: {dp} vs {en}");
                }
            }
        }
        assert!(matches!(
            permutation_sum_density(11, &vec![ThresholdCdf::uniform(); 11], true, &SimplexPoint::center(11), al(0, 1)),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn ckr_matches_single_threshold_enumeration() {
        // oracle: enumerate orders; with one rho = x_l every terminal ahead
        // must sit strictly below x_l
        let mut rng = RngState::new(12, 0);
        for k in 3..=6 {
            for _ in 0..40 {
                let x = random_point(&mut rng, k);
                let a = al(1, k - 1);
                let orders = permutations(k);
                let mut want = 0.0;
                for o in &orders {
                    for (pos, &l) in o.iter().enumerate().take(k - 1) {
                        if a.contains(l) && o[..pos].iter().all(|&h| x[h] < x[l]) {
                            want += 1.0;
                        }
                    }
                }
                want /= orders.len() as f64;
                assert!((ckr_density(k, &x, a).unwrap() - want).abs() < 1e-12);
            }
        }
        // worked point
        let d = ckr_density(3, &pt(&[0.5, 0.2, 0.3]), al(0, 1)).unwrap();
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ball_corner_is_flat() {
        for c in [[1.0 / 3.0; 3], [0.8, 0.1, 0.1], [0.1, 0.1, 0.8], [0.5, 0.3, 0.2]] {
            for a in Alignment::all(3) {
                if (c[a.i()] - BALL_EDGE).abs() < 1e-9 || (c[a.j()] - BALL_EDGE).abs() < 1e-9 {
                    continue;
                }
                let d = ball_corner_density(BALL_PROB, &pt(&c), a).unwrap();
                assert!((d - 12.0 / 11.0).abs() < 1e-12, "{c:?} {a:?}: {d}");
            }
        }
    }

    #[test]
    fn corner_segment_combined_value() {
        let cfg = SchemeConfig::icut_corner(6);
        let e = aligned(&[0.8, 0.2, 0.0, 0.0, 0.0, 0.0], [0, 1], 1e-3);
        let d = combined_icut_corner_segment_density(&cfg, &e).unwrap();
        let want = 11.0 / 12.0 * 0.667186 + 11.0 / 5.0 * (1.0 - 0.667186);
        assert!((d - want).abs() < 1e-12, "{d} vs {want}");
        // alpha = 1 is pure ICUT
        let pure = SchemeConfig::IcutCorner { k: 6, corner_at: ICUT_CORNER, icut_prob: 1.0, use_last_slice: true };
        let x = pt(&[0.3, 0.1, 0.2, 0.1, 0.2, 0.1]);
        assert_eq!(
            combined_icut_corner_density(&pure, &x, al(0, 1)).unwrap(),
            exact_sparc_density(6, &icut_fs(6), true, &x, al(0, 1)).unwrap()
        );
    }

    fn schemes(k: usize) -> Vec<SchemeConfig> {
        let mut v = vec![
            SchemeConfig::Ckr { k },
            SchemeConfig::IndependentUniform { k, use_last_slice: true },
            SchemeConfig::IndependentUniform { k, use_last_slice: false },
            SchemeConfig::icut_corner(k),
            SchemeConfig::IcutCorner { k, corner_at: 0.641, icut_prob: 0.675, use_last_slice: false },
        ];
        if k == 3 {
            v.push(SchemeConfig::ball_corner());
        }
        v
    }

    #[test]
    fn exact_agrees_with_monte_carlo() {
        let mut rng = RngState::new(21, 0);
        let mut worst = 0.0f64;
        for k in [3usize, 4, 6] {
            for cfg in schemes(k) {
                for s in 0..6 {
                    let x = random_point(&mut rng, k);
                    let a = Alignment::all(k)[s % Alignment::all(k).len()];
                    let room = x[a.i()].min(x[a.j()]);
                    if room < 0.02 {
                        continue;
                    }
                    let e = aligned(x.coords(), a.pair(), 0.02);
                    let exact = segment_density(&cfg, &e).unwrap();
                    let mc = mc_density(&cfg, &e, 40_000, &mut rng.fork(s as u64)).unwrap();
                    let z = (exact - mc.mean).abs() / mc.stderr.max(1e-12);
                    worst = worst.max(z);
                    assert!(z < 4.5, "{cfg:?} {e:?}: exact {exact}, mc {} +- {}", mc.mean, mc.stderr);
                }
            }
        }
        assert!(worst > 0.0);
    }

    #[test]
    fn mixture_is_linear() {
        let k = 4;
        let parts = vec![(0.3, SchemeConfig::Ckr { k }), (0.7, SchemeConfig::icut_corner(k))];
        let mix = SchemeConfig::Mixture(parts.clone());
        let e = aligned(&[0.3, 0.25, 0.2, 0.25], [0, 2], 0.1);
        let want: f64 = parts.iter().map(|(w, c)| w * segment_density(c, &e).unwrap()).sum();
        assert!((segment_density(&mix, &e).unwrap() - want).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn splitting_is_additive(seed in 0u64..1000, k in 3usize..6, cut in 0.05f64..0.95) {
            let mut rng = RngState::new(seed, 3);
            let x = random_point(&mut rng, k);
            let len = (x[0].min(x[1]) * 2.0).min(0.4);
            prop_assume!(len > 1e-3);
            let e = aligned(x.coords(), [0, 1], len);
            let t = e.start()[0] + cut * (e.end()[0] - e.start()[0]);
            let mut per = vec![Vec::new(); k];
            per[0].push(t);
            let pieces = subdivide_at_thresholds(&e, &per).unwrap();
            for cfg in schemes(k) {
                let whole = segment_density(&cfg, &e).unwrap();
                let parts: f64 = pieces.iter().map(|p| p.length() * segment_density(&cfg, p).unwrap()).sum::<f64>() / e.length();
                prop_assert!((whole - parts).abs() < 1e-9, "{:?}: {} vs {}", cfg, whole, parts);
            }
        }
    }
}
