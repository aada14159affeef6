//! The `k = 3` ball cut.
//!
//! A point `r` is drawn uniformly from one of the two hexagon diagonals
//! `a-c` or `b-d`, which makes every `r_i` uniform on `[0, 2/3]`. The three
//! lines `x_l = r_l` through `r` form six rays; for each wedge between two
//! rays one of its two bounding rays is kept, each with probability 1/2.

use super::{Cut, Sparc};
use crate::rng::RngState;

const A: [f64; 3] = [2.0 / 3.0, 1.0 / 3.0, 0.0];
const B: [f64; 3] = [2.0 / 3.0, 0.0, 1.0 / 3.0];
const C: [f64; 3] = [0.0, 2.0 / 3.0, 1.0 / 3.0];
const D: [f64; 3] = [0.0, 1.0 / 3.0, 2.0 / 3.0];

/// The six orderings of three terminals, in lexicographic order.
pub(crate) const ORDERS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// The two terminals other than `h`, lower first.
pub(crate) fn others(h: usize) -> [usize; 2] {
    match h {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// One realization of the ball cut, before choosing a representation.
#[derive(Clone, Debug, PartialEq)]
pub struct BallDraw {
    pub r: [f64; 3],
    /// `side_choice[h]` is the line (`x_l = r_l`) kept for the wedge at the
    /// side opposite terminal `h`.
    pub side_choice: [usize; 3],
    /// Uniform used to pick an ordering when the kept rays form a pinwheel.
    pub extra: f64,
}

impl BallDraw {
    pub fn sample(rng: &mut RngState) -> BallDraw {
        let (p, q) = if rng.below(2) == 0 { (A, C) } else { (B, D) };
        let t = rng.uniform_open();
        let r = [
            p[0] + t * (q[0] - p[0]),
            p[1] + t * (q[1] - p[1]),
            p[2] + t * (q[2] - p[2]),
        ];
        let mut side_choice = [0; 3];
        for (h, choice) in side_choice.iter_mut().enumerate() {
            *choice = others(h)[rng.below(2)];
        }
        let extra = rng.uniform();
        BallDraw { r, side_choice, extra }
    }

    /// Ordering of the equivalent two-slice sparc. If line `L` is kept on
    /// both of its wedges it slices first, followed by the line kept at the
    /// side opposite `L`; the two pinwheel patterns use a uniform ordering.
    pub fn order(&self) -> [usize; 3] {
        for l in 0..3 {
            let [x, y] = others(l);
            if self.side_choice[x] == l && self.side_choice[y] == l {
                let m = self.side_choice[l];
                return [l, m, 3 - l - m];
            }
        }
        ORDERS[((self.extra * 6.0) as usize).min(5)]
    }

    pub fn to_sparc(&self) -> Sparc {
        Sparc::new_unchecked(self.order().to_vec(), self.r.to_vec(), 2)
    }

    /// The rays kept, as `(side h, line l)` pairs.
    pub fn rays(&self) -> [(usize, usize); 3] {
        [
            (0, self.side_choice[0]),
            (1, self.side_choice[1]),
            (2, self.side_choice[2]),
        ]
    }
}

/// Rays kept by a two-slice sparc through `r` with ordering `order`.
pub fn sparc_rays(order: &[usize]) -> [(usize, usize); 3] {
    let (l, m) = (order[0], order[1]);
    let [x, y] = others(l);
    [(x, l), (y, l), (l, m)]
}

/// Ball cut represented by its kept rays.
#[derive(Clone, Debug, PartialEq)]
pub struct RayCut {
    pub r: [f64; 3],
    pub side_choice: [usize; 3],
}

impl RayCut {
    /// Region of `p`: with `d = p - r`, a single positive `d_i` gives `i`;
    /// two positive `d_i, d_j` put `p` in the wedge at side `{i, j}`, owned
    /// by the terminal whose line was kept there. Zeros count toward the
    /// lower index.
    pub fn classify(&self, p: &[f64]) -> usize {
        let d = [p[0] - self.r[0], p[1] - self.r[1], p[2] - self.r[2]];
        let pos: [bool; 3] = [d[0] > 0.0, d[1] > 0.0, d[2] > 0.0];
        let count = pos.iter().filter(|&&b| b).count();
        match count {
            1 => pos.iter().position(|&b| b).unwrap_or(0),
            2 => {
                let h = pos.iter().position(|&b| !b).unwrap_or(0);
                self.side_choice[h]
            }
            _ => {
                // p == r up to ties: lowest index with the largest offset
                let mut best = 0;
                for l in 1..3 {
                    if d[l] > d[best] {
                        best = l;
                    }
                }
                best
            }
        }
    }
}

pub(crate) fn corner_cut(rng: &mut RngState) -> Cut {
    let h = rng.below(3);
    let pair = others(h);
    let first = rng.below(2);
    let rho = 2.0 / 3.0 + (1.0 / 3.0) * rng.uniform_pos();
    let order = [pair[first], pair[1 - first], h];
    let mut thresholds = [1.0; 3];
    thresholds[pair[0]] = rho;
    thresholds[pair[1]] = rho;
    Cut::Sparc(Sparc::new_unchecked(order.to_vec(), thresholds.to_vec(), 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn hexagon_diagonals_are_in_the_simplex() {
        for p in [A, B, C, D] {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn order_is_uniform_and_matches_rays() {
        let mut rng = RngState::new(3, 0);
        let mut counts = [0usize; 6];
        let n = 60_000;
        for _ in 0..n {
            let d = BallDraw::sample(&mut rng);
            let o = d.order();
            counts[ORDERS.iter().position(|x| *x == o).unwrap()] += 1;
            let mut a: Vec<_> = d.rays().to_vec();
            let mut b: Vec<_> = sparc_rays(&o).to_vec();
            a.sort_unstable();
            b.sort_unstable();
            let pinwheel = (0..3).all(|l| d.side_choice.iter().filter(|&&c| c == l).count() == 1);
            if !pinwheel {
                assert_eq!(a, b);
                // identical partitions away from r
                let rays = RayCut { r: d.r, side_choice: d.side_choice };
                let s = d.to_sparc();
                for p in [[0.9, 0.05, 0.05], [0.34, 0.33, 0.33], [0.1, 0.45, 0.45], [0.45, 0.1, 0.45]] {
                    assert_eq!(rays.classify(&p), s.classify_coords(&p));
                }
            }
        }
        for c in counts {
            let f = c as f64 / n as f64;
            assert!((f - 1.0 / 6.0).abs() < 0.01, "{counts:?}");
        }
    }
}
