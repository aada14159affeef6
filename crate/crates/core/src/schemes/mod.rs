//! Sparcs, cutting-scheme configurations, samplers and rounding.
//!
//! A sparc walks the terminals in a given order; each terminal with a slice
//! claims every still-unclaimed point of its closed corner `x_i >= rho_i`,
//! and whatever is left goes to the last terminal in the order.

mod ball;

pub use ball::{sparc_rays, BallDraw, RayCut};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{alignment_of, Alignment, Segment, SimplexPoint};
use crate::graph::{cut_cost, Labeling};
use crate::relaxation::AlignedInstance;
use crate::rng::RngState;
use crate::scalar::Scalar;
use crate::search::DiscreteDistribution;

/// Corner placement used by the general-`k` scheme.
pub const ICUT_CORNER: f64 = 6.0 / 11.0;
/// Mixing probability of the general-`k` scheme.
pub const ICUT_PROB: f64 = 0.667186;
/// Probability of the ball cut in the `k = 3` scheme.
pub const BALL_PROB: f64 = 8.0 / 11.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Sparc {
    order: Vec<usize>,
    thresholds: Vec<f64>,
    slice_count: usize,
}

impl Sparc {
    pub fn new(order: Vec<usize>, thresholds: Vec<f64>, slice_count: usize) -> Result<Self> {
        let k = order.len();
        if thresholds.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: thresholds.len(),
            });
        }
        let mut seen = alloc::vec![false; k];
        for &t in &order {
            if t >= k || seen[t] {
                return Err(Error::InvalidConfig(format!("{order:?} is not a permutation")));
            }
            seen[t] = true;
        }
        if thresholds.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return Err(Error::InvalidConfig("thresholds must lie in [0, 1]".into()));
        }
        if slice_count == 0 || slice_count > k {
            return Err(Error::InvalidConfig(format!("slice count {slice_count} out of range")));
        }
        Ok(Sparc {
            order,
            thresholds,
            slice_count,
        })
    }

    pub(crate) fn new_unchecked(order: Vec<usize>, thresholds: Vec<f64>, slice_count: usize) -> Self {
        Sparc {
            order,
            thresholds,
            slice_count,
        }
    }

    pub fn k(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn slice_count(&self) -> usize {
        self.slice_count
    }

    pub fn classify(&self, p: &SimplexPoint) -> usize {
        self.classify_coords(p.coords())
    }

    pub fn classify_coords(&self, p: &[f64]) -> usize {
        for &i in &self.order[..self.slice_count] {
            if p[i] >= self.thresholds[i] {
                return i;
            }
        }
        self.order[self.order.len() - 1]
    }

    /// Number of terminals that cut `e`: they capture part, but not all, of
    /// what is still unclaimed of it.
    pub fn crossings_on_segment(&self, e: &Segment) -> Result<usize> {
        let al = alignment_of(e)?.ok_or(Error::UnalignedSegment)?;
        Ok(self.crossings_aligned(e, al))
    }

    pub(crate) fn crossings_aligned(&self, e: &Segment, al: Alignment) -> usize {
        let (a, b) = (e.start().coords(), e.end().coords());
        // unclaimed parameter interval; it stays an interval because every
        // capture takes a prefix or a suffix
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut cuts = 0;
        for &h in &self.order[..self.slice_count] {
            let rho = self.thresholds[h];
            if !al.contains(h) {
                if a[h] >= rho {
                    return cuts;
                }
                continue;
            }
            let slope = b[h] - a[h];
            let t = (rho - a[h]) / slope;
            let (clo, chi) = if slope > 0.0 { (t.max(lo), hi) } else { (lo, t.min(hi)) };
            let captured = chi - clo;
            if captured <= 0.0 {
                continue;
            }
            if captured >= hi - lo {
                return cuts;
            }
            cuts += 1;
            if slope > 0.0 {
                hi = clo;
            } else {
                lo = chi;
            }
        }
        cuts
    }
}

/// A realized cut of the simplex.
#[derive(Clone, Debug, PartialEq)]
pub enum Cut {
    Sparc(Sparc),
    Rays(RayCut),
}

impl Cut {
    pub fn classify(&self, p: &SimplexPoint) -> usize {
        self.classify_coords(p.coords())
    }

    pub fn classify_coords(&self, p: &[f64]) -> usize {
        match self {
            Cut::Sparc(s) => s.classify_coords(p),
            Cut::Rays(r) => r.classify(p),
        }
    }

    /// Cut events on an aligned segment: sparc capture events, or for ray
    /// cuts whether the endpoint labels differ.
    pub fn crossings(&self, e: &Segment, al: Alignment) -> usize {
        match self {
            Cut::Sparc(s) => s.crossings_aligned(e, al),
            Cut::Rays(r) => usize::from(r.classify(e.start().coords()) != r.classify(e.end().coords())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallVariant {
    /// Two slices through `r` in random order.
    SparcEquivalent,
    /// Independently kept rays.
    IndependentRays,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SchemeConfig {
    /// One threshold `rho ~ U(0, 1]` shared by all terminals, random order,
    /// `k - 1` slices.
    Ckr { k: usize },
    /// Independent thresholds `U(0, 1]`, random order.
    IndependentUniform { k: usize, use_last_slice: bool },
    /// The `k = 3` scheme: ball cut with probability `ball_prob`, otherwise
    /// two corners cut at one `rho ~ U(2/3, 1]`.
    BallCorner { ball_prob: f64, variant: BallVariant },
    /// Independent thresholds `U(0, corner_at]` with probability
    /// `icut_prob`, otherwise a joint corner cut at `rho ~ U[corner_at, 1]`.
    IcutCorner {
        k: usize,
        corner_at: f64,
        icut_prob: f64,
        use_last_slice: bool,
    },
    /// Discretized sparcs in uniformly random terminal order.
    Discrete(DiscreteDistribution),
    Mixture(Vec<(f64, SchemeConfig)>),
}

impl SchemeConfig {
    pub fn ball_corner() -> Self {
        SchemeConfig::BallCorner {
            ball_prob: BALL_PROB,
            variant: BallVariant::SparcEquivalent,
        }
    }

    /// Defaults of the general-`k` analysis.
    pub fn icut_corner(k: usize) -> Self {
        SchemeConfig::IcutCorner {
            k,
            corner_at: ICUT_CORNER,
            icut_prob: ICUT_PROB,
            use_last_slice: true,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            SchemeConfig::Ckr { k }
            | SchemeConfig::IndependentUniform { k, .. }
            | SchemeConfig::IcutCorner { k, .. } => *k,
            SchemeConfig::BallCorner { .. } => 3,
            SchemeConfig::Discrete(d) => d.k(),
            SchemeConfig::Mixture(parts) => parts.first().map_or(0, |(_, c)| c.k()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} = {p} is not a probability")))
            }
        };
        let min_k = |k: usize| {
            if k >= 2 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("k = {k} is below 2")))
            }
        };
        match self {
            SchemeConfig::Ckr { k } | SchemeConfig::IndependentUniform { k, .. } => min_k(*k),
            SchemeConfig::BallCorner { ball_prob, .. } => prob("ball_prob", *ball_prob),
            SchemeConfig::IcutCorner {
                k,
                corner_at,
                icut_prob,
                ..
            } => {
                min_k(*k)?;
                prob("icut_prob", *icut_prob)?;
                if !(*corner_at > 0.5 && *corner_at < 1.0) {
                    return Err(Error::InvalidConfig(format!(
                        "corner_at = {corner_at} must lie in (1/2, 1)"
                    )));
                }
                Ok(())
            }
            SchemeConfig::Discrete(d) => d.validate(),
            SchemeConfig::Mixture(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidConfig("empty mixture".into()));
                }
                let k = parts[0].1.k();
                let mut total = 0.0;
                for (w, c) in parts {
                    prob("mixture weight", *w)?;
                    c.validate()?;
                    if c.k() != k {
                        return Err(Error::InvalidConfig("mixture components differ in k".into()));
                    }
                    total += w;
                }
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidConfig(format!("mixture weights sum to {total}")));
                }
                Ok(())
            }
        }
    }

    /// Whether the scheme is invariant under relabeling terminals, so that
    /// densities need only be checked on `0,1`-aligned segments.
    pub fn is_symmetric(&self) -> bool {
        match self {
            // r is not symmetrically distributed, only its marginals are
            SchemeConfig::BallCorner { .. } => false,
            SchemeConfig::Mixture(parts) => parts.iter().all(|(_, c)| c.is_symmetric()),
            _ => true,
        }
    }

    /// Draws a cut; the configuration must be valid.
    pub fn sample(&self, rng: &mut RngState) -> Cut {
        match self {
            SchemeConfig::Ckr { k } => {
                let order = rng.permutation(*k);
                let rho = rng.uniform_pos();
                Cut::Sparc(Sparc::new_unchecked(order, alloc::vec![rho; *k], k - 1))
            }
            SchemeConfig::IndependentUniform { k, use_last_slice } => {
                let order = rng.permutation(*k);
                let thresholds = (0..*k).map(|_| rng.uniform_pos()).collect();
                Cut::Sparc(Sparc::new_unchecked(order, thresholds, slices(*k, *use_last_slice)))
            }
            SchemeConfig::BallCorner { ball_prob, variant } => {
                if rng.uniform() < *ball_prob {
                    let d = BallDraw::sample(rng);
                    match variant {
                        BallVariant::SparcEquivalent => Cut::Sparc(d.to_sparc()),
                        BallVariant::IndependentRays => Cut::Rays(RayCut {
                            r: d.r,
                            side_choice: d.side_choice,
                        }),
                    }
                } else {
                    ball::corner_cut(rng)
                }
            }
            SchemeConfig::IcutCorner {
                k,
                corner_at,
                icut_prob,
                use_last_slice,
            } => {
                let icut = rng.uniform() < *icut_prob;
                let order = rng.permutation(*k);
                let thresholds = if icut {
                    (0..*k).map(|_| corner_at * rng.uniform_pos()).collect()
                } else {
                    let rho = corner_at + (1.0 - corner_at) * rng.uniform();
                    alloc::vec![rho; *k]
                };
                Cut::Sparc(Sparc::new_unchecked(order, thresholds, slices(*k, *use_last_slice)))
            }
            SchemeConfig::Discrete(d) => Cut::Sparc(d.sample_sparc(rng)),
            SchemeConfig::Mixture(parts) => {
                let u = rng.uniform();
                let mut acc = 0.0;
                for (w, c) in parts {
                    acc += w;
                    if u < acc {
                        return c.sample(rng);
                    }
                }
                parts[parts.len() - 1].1.sample(rng)
            }
        }
    }
}

pub(crate) fn slices(k: usize, use_last_slice: bool) -> usize {
    if use_last_slice {
        k
    } else {
        k - 1
    }
}

/// Validates `cfg` and draws one cut.
pub fn sample_cut(cfg: &SchemeConfig, rng: &mut RngState) -> Result<Cut> {
    cfg.validate()?;
    Ok(cfg.sample(rng))
}

/// Labels the original nodes of `inst` with one sampled cut.
pub fn round_once<T: Scalar>(cfg: &SchemeConfig, inst: &AlignedInstance<T>, rng: &mut RngState) -> Result<(Labeling, T)> {
    let cut = cfg.sample(rng);
    let labels: Vec<usize> = inst
        .original_points()
        .iter()
        .map(|p| {
            let c: Vec<f64> = p.coords().iter().map(|x| x.to_f64()).collect();
            cut.classify_coords(&c)
        })
        .collect();
    let lab = Labeling::new(inst.graph(), labels)?;
    let cost = cut_cost(inst.graph(), &lab)?;
    Ok((lab, cost))
}

/// Best of `repetitions` independent roundings; ties keep the earliest.
pub fn round_embedding<T: Scalar>(
    cfg: &SchemeConfig,
    inst: &AlignedInstance<T>,
    rng: &mut RngState,
    repetitions: usize,
) -> Result<(Labeling, T)> {
    cfg.validate()?;
    if cfg.k() != inst.graph().k() {
        return Err(Error::DimensionMismatch {
            expected: inst.graph().k(),
            found: cfg.k(),
        });
    }
    let mut best: Option<(Labeling, T)> = None;
    for _ in 0..repetitions.max(1) {
        let (lab, cost) = round_once(cfg, inst, rng)?;
        if best.as_ref().map_or(true, |(_, b)| cost < *b) {
            best = Some((lab, cost));
        }
    }
    Ok(best.expect("at least one repetition"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::star;
    use crate::graph::is_multiway_cut;
    use crate::relaxation::{align_embedding, solve_relaxation, vertex_embedding};
    use alloc::vec;

    fn pt(c: &[f64]) -> SimplexPoint {
        SimplexPoint::new(c.to_vec()).unwrap()
    }

    fn seg(a: &[f64], b: &[f64]) -> Segment {
        Segment::new(pt(a), pt(b)).unwrap()
    }

    #[test]
    fn classify_examples() {
        let s = Sparc::new(vec![0, 1, 2], vec![0.5, 0.5, 0.5], 3).unwrap();
        assert_eq!(s.classify(&pt(&[0.6, 0.2, 0.2])), 0);
        let s = Sparc::new(vec![0, 1, 2], vec![0.9, 0.1, 0.5], 2).unwrap();
        assert_eq!(s.classify(&pt(&[0.2, 0.15, 0.65])), 1);
        let s = Sparc::new(vec![0, 1, 2], vec![0.9, 0.9, 0.9], 3).unwrap();
        assert_eq!(s.classify(&pt(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0])), 2);
        // closed corner
        let s = Sparc::new(vec![1, 0, 2], vec![0.5, 0.25, 1.0], 2).unwrap();
        assert_eq!(s.classify(&pt(&[0.5, 0.25, 0.25])), 1);
        assert!(Sparc::new(vec![0, 0, 2], vec![0.5; 3], 2).is_err());
        assert!(Sparc::new(vec![0, 1, 2], vec![1.5, 0.5, 0.5], 2).is_err());
    }

    #[test]
    fn crossing_examples() {
        // inside the first corner
        let s = Sparc::new(vec![0, 1, 2], vec![0.5, 0.5, 0.5], 2).unwrap();
        let e = seg(&[0.7, 0.2, 0.1], &[0.6, 0.3, 0.1]);
        assert_eq!(s.crossings_on_segment(&e).unwrap(), 0);
        // the first slice splits it
        let e = seg(&[0.55, 0.35, 0.1], &[0.45, 0.45, 0.1]);
        assert_eq!(s.crossings_on_segment(&e).unwrap(), 1);
        // both aligned terminals cut after terminal 2 passes
        let s = Sparc::new(vec![2, 0, 1], vec![0.5, 0.45, 0.9], 3).unwrap();
        let e = seg(&[0.55, 0.35, 0.1], &[0.4, 0.5, 0.1]);
        assert_eq!(s.crossings_on_segment(&e).unwrap(), 2);
        // remainder assignment is not a cut event
        let s = Sparc::new(vec![2, 0, 1], vec![0.5, 0.45, 0.9], 2).unwrap();
        assert_eq!(s.crossings_on_segment(&e).unwrap(), 1);
        let bad = seg(&[1.0, 0.0, 0.0], &[0.0, 0.5, 0.5]);
        assert_eq!(s.crossings_on_segment(&bad), Err(Error::UnalignedSegment));
    }

    #[test]
    fn only_aligned_terminals_cut() {
        // a terminal outside the alignment either swallows the segment or
        // leaves it untouched
        let mut rng = RngState::new(9, 0);
        let cfg = SchemeConfig::IndependentUniform { k: 5, use_last_slice: true };
        let e = seg(&[0.3, 0.1, 0.2, 0.25, 0.15], &[0.3, 0.25, 0.05, 0.25, 0.15]);
        let al = alignment_of(&e).unwrap().unwrap();
        for _ in 0..20_000 {
            let Cut::Sparc(s) = cfg.sample(&mut rng) else { unreachable!() };
            let n = s.crossings_aligned(&e, al);
            assert!(n <= 2);
            // brute force: walk a fine grid and attribute label changes
            if n == 0 {
                let l0 = s.classify(e.start());
                let uniform = (0..=50).all(|t| s.classify(&e.point_at(t as f64 / 50.0)) == l0);
                assert!(uniform);
            }
        }
    }

    fn all_schemes(k: usize) -> Vec<SchemeConfig> {
        let mut v = vec![
            SchemeConfig::Ckr { k },
            SchemeConfig::IndependentUniform { k, use_last_slice: false },
            SchemeConfig::IndependentUniform { k, use_last_slice: true },
            SchemeConfig::icut_corner(k),
            SchemeConfig::IcutCorner { k, corner_at: 0.6, icut_prob: 0.5, use_last_slice: false },
        ];
        if k == 3 {
            v.push(SchemeConfig::ball_corner());
            v.push(SchemeConfig::BallCorner { ball_prob: BALL_PROB, variant: BallVariant::IndependentRays });
        }
        v
    }

    #[test]
    fn vertices_keep_their_terminal() {
        for k in 3..=8 {
            for cfg in all_schemes(k) {
                cfg.validate().unwrap();
                let mut rng = RngState::new(k as u64, 1);
                for _ in 0..20_000 {
                    let cut = cfg.sample(&mut rng);
                    for i in 0..k {
                        assert_eq!(cut.classify(&SimplexPoint::vertex(k, i)), i, "{cfg:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn joint_corner_order_is_irrelevant() {
        let k = 5;
        let mut rng = RngState::new(2, 2);
        for _ in 0..2000 {
            let rho = 0.55 + 0.45 * rng.uniform();
            let p: Vec<f64> = {
                let raw: Vec<f64> = (0..k).map(|_| rng.uniform().powi(3)).collect();
                let s: f64 = raw.iter().sum();
                raw.iter().map(|x| x / s).collect()
            };
            let base = Sparc::new((0..k).collect(), vec![rho; k], k).unwrap().classify_coords(&p);
            let o = rng.permutation(k);
            let other = Sparc::new(o, vec![rho; k], k).unwrap().classify_coords(&p);
            if p.iter().any(|&x| x >= rho) {
                assert_eq!(base, other);
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(SchemeConfig::icut_corner(6).validate().is_ok());
        let bad = SchemeConfig::IcutCorner { k: 6, corner_at: 0.4, icut_prob: 0.5, use_last_slice: true };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = SchemeConfig::Mixture(vec![(0.5, SchemeConfig::Ckr { k: 3 }), (0.6, SchemeConfig::Ckr { k: 3 })]);
        assert!(bad.validate().is_err());
        let bad = SchemeConfig::Mixture(vec![(0.5, SchemeConfig::Ckr { k: 3 }), (0.5, SchemeConfig::Ckr { k: 4 })]);
        assert!(bad.validate().is_err());
        assert!(sample_cut(&SchemeConfig::BallCorner { ball_prob: 1.5, variant: BallVariant::SparcEquivalent }, &mut RngState::new(0, 0)).is_err());
    }

    #[test]
    fn sampling_replays() {
        let cfg = SchemeConfig::Ckr { k: 3 };
        let a = sample_cut(&cfg, &mut RngState::new(42, 0)).unwrap();
        let b = sample_cut(&cfg, &mut RngState::new(42, 0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rounding_star() {
        let g = star();
        let (emb, _) = solve_relaxation(&g).unwrap();
        let inst = align_embedding(&g, &emb).unwrap();
        let (lab, cost) = round_embedding(&SchemeConfig::Ckr { k: 3 }, &inst, &mut RngState::new(1, 0), 200).unwrap();
        assert_eq!(cost, 2.0);
        assert!(is_multiway_cut(&g, &lab.cut_edges(&g)).unwrap());

        // nodes already at vertices: every sample returns that cut
        let lab = Labeling::new(&g, vec![0, 1, 2, 1]).unwrap();
        let emb = vertex_embedding(&g, &lab).unwrap();
        let inst = align_embedding(&g, &emb).unwrap();
        let mut rng = RngState::new(5, 0);
        for _ in 0..50 {
            let (l, c) = round_once(&SchemeConfig::icut_corner(3), &inst, &mut rng).unwrap();
            assert_eq!(c, 2.0);
            assert_eq!(l, lab);
        }
    }
}
