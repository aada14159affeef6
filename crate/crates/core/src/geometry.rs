//! Exact geometry of the simplex `{x in R^k : x >= 0, sum x = 1}`.
//!
//! Lengths are half the L1 norm, so the distance between two vertices is 1.
//! A segment is `i,j`-aligned when it runs parallel to the simplex edge
//! between vertices `i` and `j`: only coordinates `i` and `j` change, by
//! equal amounts in opposite directions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::{sum, Scalar};

/// Tolerance on `sum(coords) == 1` in float mode.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Tolerance used to classify projection widths in float mode.
pub const ALIGNMENT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexPoint<T = f64> {
    coords: Vec<T>,
}

impl<T: Scalar> SimplexPoint<T> {
    /// Validates barycentric coordinates.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::TooFewCoordinates(coords.len()));
        }
        for (index, &c) in coords.iter().enumerate() {
            if c < T::zero() && !(c.is_zero_within(MEMBERSHIP_TOL) && !T::EXACT) {
                return Err(Error::NegativeCoordinate {
                    index,
                    value: c.to_f64(),
                });
            }
        }
        let total = sum(coords.iter().copied());
        if !total.near(T::one(), MEMBERSHIP_TOL) {
            return Err(Error::SumNotOne {
                sum: total.to_f64(),
            });
        }
        Ok(SimplexPoint { coords })
    }

    pub(crate) fn new_unchecked(coords: Vec<T>) -> Self {
        SimplexPoint { coords }
    }

    /// Vertex `i` of the `k`-simplex.
    pub fn vertex(k: usize, i: usize) -> Self {
        let mut coords = vec![T::zero(); k];
        coords[i] = T::one();
        SimplexPoint { coords }
    }

    /// Barycenter `(1/k, ..., 1/k)`.
    pub fn center(k: usize) -> Self {
        SimplexPoint {
            coords: vec![T::from_ratio(1, k as i64); k],
        }
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn to_f64(&self) -> SimplexPoint<f64> {
        SimplexPoint {
            coords: self.coords.iter().map(|c| c.to_f64()).collect(),
        }
    }
}

impl<T> core::ops::Index<usize> for SimplexPoint<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

/// Half the L1 distance between two points.
pub fn half_l1_distance<T: Scalar>(p: &SimplexPoint<T>, q: &SimplexPoint<T>) -> Result<T> {
    if p.k() != q.k() {
        return Err(Error::DimensionMismatch {
            expected: p.k(),
            found: q.k(),
        });
    }
    let total = sum(p.coords.iter().zip(&q.coords).map(|(&a, &b)| (a - b).abs()));
    Ok(total / T::from_ratio(2, 1))
}

/// An unordered pair of terminals `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alignment {
    i: usize,
    j: usize,
}

impl Alignment {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::DomainError("alignment needs two distinct terminals".into()));
        }
        Ok(Alignment {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn pair(&self) -> [usize; 2] {
        [self.i, self.j]
    }

    pub fn contains(&self, t: usize) -> bool {
        t == self.i || t == self.j
    }

    /// All pairs for `k` terminals in lexicographic order.
    pub fn all(k: usize) -> Vec<Alignment> {
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                out.push(Alignment { i, j });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Segment<T = f64> {
    a: SimplexPoint<T>,
    b: SimplexPoint<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(a: SimplexPoint<T>, b: SimplexPoint<T>) -> Result<Self> {
        if a.k() != b.k() {
            return Err(Error::DimensionMismatch {
                expected: a.k(),
                found: b.k(),
            });
        }
        Ok(Segment { a, b })
    }

    pub fn start(&self) -> &SimplexPoint<T> {
        &self.a
    }

    pub fn end(&self) -> &SimplexPoint<T> {
        &self.b
    }

    pub fn k(&self) -> usize {
        self.a.k()
    }

    pub fn proj_min(&self, l: usize) -> T {
        self.a[l].min_of(self.b[l])
    }

    pub fn proj_max(&self, l: usize) -> T {
        self.a[l].max_of(self.b[l])
    }

    /// `|e_l|`, the width of the projection onto coordinate `l`.
    pub fn proj_width(&self, l: usize) -> T {
        (self.a[l] - self.b[l]).abs()
    }

    /// `|e|`, half the L1 norm.
    pub fn length(&self) -> T {
        let total = sum((0..self.k()).map(|l| self.proj_width(l)));
        total / T::from_ratio(2, 1)
    }

    /// Point at parameter `t` in `[0, 1]` (0 is the start).
    pub fn point_at(&self, t: T) -> SimplexPoint<T> {
        SimplexPoint::new_unchecked(
            self.a
                .coords
                .iter()
                .zip(&self.b.coords)
                .map(|(&x, &y)| x + t * (y - x))
                .collect(),
        )
    }

    pub fn midpoint(&self) -> SimplexPoint<T> {
        self.point_at(T::from_ratio(1, 2))
    }

    pub fn reversed(&self) -> Segment<T> {
        Segment {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn to_f64(&self) -> Segment<f64> {
        Segment {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
        }
    }
}

/// The pair `(i, j)` if the segment is `i,j`-aligned, `None` otherwise.
pub fn alignment_of<T: Scalar>(e: &Segment<T>) -> Result<Option<Alignment>> {
    let len = e.length();
    if len.is_zero_within(ALIGNMENT_TOL) {
        return Err(Error::ZeroLengthSegment);
    }
    let moving: Vec<usize> = (0..e.k())
        .filter(|&l| !e.proj_width(l).is_zero_within(ALIGNMENT_TOL))
        .collect();
    if moving.len() != 2 {
        return Ok(None);
    }
    let (i, j) = (moving[0], moving[1]);
    if e.proj_width(i).near(len, ALIGNMENT_TOL) && e.proj_width(j).near(len, ALIGNMENT_TOL) {
        Ok(Some(Alignment { i, j }))
    } else {
        Ok(None)
    }
}

pub(crate) fn require_alignment<T: Scalar>(e: &Segment<T>) -> Result<Alignment> {
    alignment_of(e)?.ok_or(Error::UnalignedSegment)
}

/// Replaces a segment by a path of at most `k - 1` aligned segments with the
/// same endpoints and the same total length.
///
/// Greedy rule: move from the lowest-index coordinate that must decrease to
/// the lowest-index coordinate that must increase, by the smaller of the two
/// remaining deficits.
pub fn decompose_aligned<T: Scalar>(e: &Segment<T>) -> Vec<Segment<T>> {
    let k = e.k();
    let mut delta: Vec<T> = (0..k).map(|l| e.b[l] - e.a[l]).collect();
    let settled = |d: T| d.is_zero_within(1e-15);
    let mut pieces = Vec::new();
    let mut current = e.a.clone();
    loop {
        let up = (0..k).find(|&l| delta[l] > T::zero() && !settled(delta[l]));
        let down = (0..k).find(|&l| delta[l] < T::zero() && !settled(delta[l]));
        let (up, down) = match (up, down) {
            (Some(u), Some(d)) => (u, d),
            _ => break,
        };
        let step = delta[up].min_of(-delta[down]);
        let mut next = current.coords.clone();
        next[up] = next[up] + step;
        next[down] = next[down] - step;
        delta[up] = delta[up] - step;
        delta[down] = delta[down] + step;
        let next = SimplexPoint::new_unchecked(next);
        pieces.push(Segment {
            a: current,
            b: next.clone(),
        });
        current = next;
    }
    if let Some(last) = pieces.last_mut() {
        last.b = e.b.clone();
    }
    pieces
}

/// Splits an aligned segment wherever one of its two moving coordinates
/// crosses a listed value. `cut_values[l]` are the thresholds for
/// coordinate `l`; the list may be shorter than `k` (missing entries mean no
/// thresholds). Pieces are returned in order from start to end.
pub fn subdivide_at_thresholds<T: Scalar>(
    e: &Segment<T>,
    cut_values: &[Vec<T>],
) -> Result<Vec<Segment<T>>> {
    let al = require_alignment(e)?;
    let mut ts: Vec<T> = Vec::new();
    for l in al.pair() {
        let (a, b) = (e.a[l], e.b[l]);
        let lo = a.min_of(b);
        let hi = a.max_of(b);
        for &v in cut_values.get(l).map(|v| v.as_slice()).unwrap_or(&[]) {
            if v > lo && v < hi && !v.near(lo, 1e-15) && !v.near(hi, 1e-15) {
                ts.push((v - a) / (b - a));
            }
        }
    }
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    ts.dedup_by(|x, y| x.near(*y, 1e-15));
    let mut pieces = Vec::with_capacity(ts.len() + 1);
    let mut prev = e.a.clone();
    for t in ts {
        let mut p = e.point_at(t);
        // Pin the crossing coordinates exactly on the threshold lattice.
        snap_pair(&mut p, &e.a, &e.b, al);
        pieces.push(Segment { a: prev, b: p.clone() });
        prev = p;
    }
    pieces.push(Segment {
        a: prev,
        b: e.b.clone(),
    });
    Ok(pieces)
}

/// Same thresholds on every coordinate.
pub fn subdivide_uniform<T: Scalar>(e: &Segment<T>, values: &[T]) -> Result<Vec<Segment<T>>> {
    let per: Vec<Vec<T>> = (0..e.k()).map(|_| values.to_vec()).collect();
    subdivide_at_thresholds(e, &per)
}

// Restores `x_i + x_j` (constant along an aligned segment) after interpolation.
fn snap_pair<T: Scalar>(p: &mut SimplexPoint<T>, a: &SimplexPoint<T>, _b: &SimplexPoint<T>, al: Alignment) {
    if T::EXACT {
        return;
    }
    let (i, j) = (al.i, al.j);
    let pair_sum = a[i] + a[j];
    p.coords[j] = pair_sum - p.coords[i];
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn pt(c: &[f64]) -> SimplexPoint {
        SimplexPoint::new(c.to_vec()).unwrap()
    }

    fn seg(a: &[f64], b: &[f64]) -> Segment {
        Segment::new(pt(a), pt(b)).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn make_point_examples() {
        let v = pt(&[1.0, 0.0, 0.0]);
        assert_eq!(v, SimplexPoint::vertex(3, 0));
        let c = SimplexPoint::new(vec![r(1, 3), r(1, 3), r(1, 3)]).unwrap();
        assert_eq!(c, SimplexPoint::center(3));
        assert!(matches!(
            SimplexPoint::new(vec![0.5, 0.6, -0.1]),
            Err(Error::NegativeCoordinate { index: 2, .. })
        ));
        assert!(matches!(
            SimplexPoint::new(vec![0.5, 0.6, 0.1]),
            Err(Error::SumNotOne { .. })
        ));
        assert!(matches!(
            SimplexPoint::new(vec![1.0]),
            Err(Error::TooFewCoordinates(1))
        ));
        // rational mode has no slack
        assert!(SimplexPoint::new(vec![r(1, 3), r(1, 3), r(1, 3) + r(1, 1_000_000_000_000)]).is_err());
    }

    #[test]
    fn distance_examples() {
        let v0 = SimplexPoint::<f64>::vertex(3, 0);
        let v1 = SimplexPoint::<f64>::vertex(3, 1);
        assert_eq!(half_l1_distance(&v0, &v1).unwrap(), 1.0);
        assert_eq!(half_l1_distance(&v0, &v0).unwrap(), 0.0);
        let p = SimplexPoint::new(vec![r(2, 3), r(1, 3), r(0, 1)]).unwrap();
        let q = SimplexPoint::new(vec![r(0, 1), r(2, 3), r(1, 3)]).unwrap();
        assert_eq!(half_l1_distance(&p, &q).unwrap(), r(2, 3));
        let w = SimplexPoint::<f64>::vertex(4, 0);
        assert!(matches!(
            half_l1_distance(&v0, &w),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn alignment_examples() {
        let al = Alignment::new(0, 1).unwrap();
        let e = seg(&[0.5, 0.2, 0.3], &[0.4, 0.3, 0.3]);
        assert_eq!(alignment_of(&e).unwrap(), Some(al));
        let e = seg(&[0.5, 0.2, 0.3], &[0.2, 0.5, 0.3]);
        assert_eq!(alignment_of(&e).unwrap(), Some(al));
        let e = seg(&[0.5, 0.25, 0.25], &[0.25, 0.5, 0.25]);
        assert_eq!(alignment_of(&e).unwrap(), Some(al));
        let e = seg(&[1.0, 0.0, 0.0], &[0.0, 0.5, 0.5]);
        assert_eq!(alignment_of(&e).unwrap(), None);
        let e = seg(&[0.5, 0.2, 0.3], &[0.5, 0.2, 0.3]);
        assert_eq!(alignment_of(&e), Err(Error::ZeroLengthSegment));
    }

    #[test]
    fn decompose_examples() {
        let e = seg(&[0.5, 0.2, 0.3], &[0.4, 0.3, 0.3]);
        let d = decompose_aligned(&e);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0], e);

        let e = Segment::new(
            SimplexPoint::<Rational>::vertex(3, 0),
            SimplexPoint::new(vec![r(0, 1), r(1, 2), r(1, 2)]).unwrap(),
        )
        .unwrap();
        let d = decompose_aligned(&e);
        assert_eq!(d.len(), 2);
        let total = d.iter().fold(r(0, 1), |acc, s| acc + s.length());
        assert_eq!(total, r(1, 1));
        assert_eq!(total, e.length());
        for s in &d {
            assert!(alignment_of(s).unwrap().is_some());
        }
        assert_eq!(d[0].start(), e.start());
        assert_eq!(d[1].end(), e.end());

        let p = pt(&[0.2, 0.3, 0.5]);
        let e = Segment::new(p.clone(), p).unwrap();
        assert!(decompose_aligned(&e).is_empty());
    }

    #[test]
    fn subdivide_examples() {
        let six = 6.0 / 11.0;
        let e = seg(&[0.5, 0.3, 0.2], &[0.6, 0.2, 0.2]);
        let pieces = subdivide_uniform(&e, &[six]).unwrap();
        assert_eq!(pieces.len(), 2);
        assert!((pieces[0].end()[0] - six).abs() < 1e-15);

        let e = seg(&[0.1, 0.3, 0.6], &[0.2, 0.2, 0.6]);
        assert_eq!(subdivide_uniform(&e, &[six]).unwrap().len(), 1);

        let e = Segment::new(
            SimplexPoint::new(vec![r(3, 10), r(7, 10), r(0, 1)]).unwrap(),
            SimplexPoint::new(vec![r(8, 10), r(2, 10), r(0, 1)]).unwrap(),
        )
        .unwrap();
        let pieces = subdivide_at_thresholds(&e, &[vec![r(6, 11), r(2, 3)]]).unwrap();
        assert_eq!(pieces.len(), 3);
        // coordinate 1 sweeps [0.2, 0.7] and crosses both values as well
        assert_eq!(subdivide_uniform(&e, &[r(6, 11), r(2, 3)]).unwrap().len(), 5);
        assert_eq!(pieces[0].end()[0], r(6, 11));
        assert_eq!(pieces[1].end()[0], r(2, 3));
        let total = pieces.iter().fold(r(0, 1), |acc, s| acc + s.length());
        assert_eq!(total, e.length());

        let bad = seg(&[1.0, 0.0, 0.0], &[0.0, 0.5, 0.5]);
        assert_eq!(subdivide_uniform(&bad, &[0.5]), Err(Error::UnalignedSegment));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn point(k: usize) -> impl Strategy<Value = SimplexPoint<f64>> {
            proptest::collection::vec(0.0f64..1.0, k).prop_filter_map("positive mass", |v| {
                let s: f64 = v.iter().sum();
                (s > 1e-6).then(|| SimplexPoint::new_unchecked(v.iter().map(|x| x / s).collect()))
            })
        }

        fn lattice_point(k: usize, den: i64) -> impl Strategy<Value = SimplexPoint<Rational>> {
            proptest::collection::vec(0i64..10, k - 1).prop_map(move |cuts| {
                let mut marks: Vec<i64> = cuts.iter().map(|c| c * den / 10).collect();
                marks.push(0);
                marks.push(den);
                marks.sort_unstable();
                let coords = marks.windows(2).map(|w| Rational::new(w[1] - w[0], den)).collect();
                SimplexPoint::new(coords).unwrap()
            })
        }

        proptest! {
            #[test]
            fn metric_axioms(p in point(4), q in point(4), s in point(4)) {
                let pq = half_l1_distance(&p, &q).unwrap();
                let qp = half_l1_distance(&q, &p).unwrap();
                let ps = half_l1_distance(&p, &s).unwrap();
                let sq = half_l1_distance(&s, &q).unwrap();
                prop_assert!(pq >= 0.0);
                prop_assert!((pq - qp).abs() < 1e-15);
                prop_assert!(pq <= ps + sq + 1e-12);
            }

            #[test]
            fn decomposition_float(p in point(5), q in point(5)) {
                let e = Segment::new(p.clone(), q.clone()).unwrap();
                let pieces = decompose_aligned(&e);
                prop_assert!(pieces.len() <= 4);
                let total: f64 = pieces.iter().map(|s| s.length()).sum();
                prop_assert!((total - e.length()).abs() < 1e-9);
                if let (Some(first), Some(last)) = (pieces.first(), pieces.last()) {
                    prop_assert_eq!(first.start(), &p);
                    prop_assert_eq!(last.end(), &q);
                }
                for w in pieces.windows(2) {
                    prop_assert_eq!(w[0].end(), w[1].start());
                }
                for s in &pieces {
                    let al = alignment_of(s).unwrap().unwrap();
                    // exactly two projections move, by equal amounts
                    let moving = (0..5).filter(|&l| s.proj_width(l) > 1e-12).count();
                    prop_assert_eq!(moving, 2);
                    prop_assert!((s.proj_width(al.i()) - s.proj_width(al.j())).abs() < 1e-12);
                }
            }

            #[test]
            fn decomposition_exact(p in lattice_point(4, 30), q in lattice_point(4, 30)) {
                let e = Segment::new(p, q).unwrap();
                let pieces = decompose_aligned(&e);
                prop_assert!(pieces.len() <= 3);
                let total = pieces.iter().fold(Rational::from_integer(0), |acc, s| acc + s.length());
                prop_assert_eq!(total, e.length());
                for s in &pieces {
                    prop_assert!(alignment_of(s).unwrap().is_some());
                }
            }

            #[test]
            fn subdivision_preserves_length(x in 0.05f64..0.9, len in 0.001f64..0.05, th in proptest::collection::vec(0.0f64..1.0, 0..6)) {
                let x1 = x.min(0.95 - len);
                let a = SimplexPoint::new_unchecked(vec![x1, 0.95 - x1, 0.05]);
                let b = SimplexPoint::new_unchecked(vec![x1 + len, 0.95 - x1 - len, 0.05]);
                let e = Segment::new(a.clone(), b.clone()).unwrap();
                let pieces = subdivide_uniform(&e, &th).unwrap();
                let total: f64 = pieces.iter().map(|s| s.length()).sum();
                prop_assert!((total - e.length()).abs() < 1e-12);
                prop_assert_eq!(pieces[0].start(), &a);
                prop_assert_eq!(pieces.last().unwrap().end(), &b);
                for w in pieces.windows(2) {
                    prop_assert_eq!(w[0].end(), w[1].start());
                }
                for s in &pieces {
                    for &v in &th {
                        for l in 0..2 {
                            prop_assert!(!(s.proj_min(l) + 1e-12 < v && v < s.proj_max(l) - 1e-12));
                        }
                    }
                }
            }
        }
    }
}
