//! Distributions over discretized sparcs and the LP that optimizes them.
//!
//! A discrete sparc on grid `N` is a vector `q` of `k - 1` boxes; the
//! slice at position `m` of a uniformly random ordering `sigma` gets the
//! threshold `rho_{sigma(m)}` uniform in `[q_m / N, (q_m + 1) / N]`, and the
//! last terminal takes the remainder. Cells are the grid boxes
//! `a_l / N <= x_l <= (a_l + 1) / N` that meet the simplex.
//!
//! The LP bounds the density of every cell on `0,1`-aligned segments. A
//! slice at position `p` for terminal `l` can only cut inside cell `a` if
//! its box is `a_l`, and it is ignored when an earlier slice surely claims
//! the whole cell (`q_m < a_{sigma(m)}`); partial earlier captures are not
//! subtracted, so the coefficients overestimate true cell densities.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpProblem, LpStatus, Objective, RowSense};
use crate::rng::RngState;
use crate::schemes::{SchemeConfig, Sparc};

/// Largest `N^(k-1)` accepted by [`build_discrete_lp`].
pub const MAX_SPARC_VARIABLES: usize = 10_000;
/// Largest number of cell constraints accepted by [`build_discrete_lp`].
pub const MAX_CELL_CONSTRAINTS: usize = 20_000;
/// Pivot budget for [`solve_discrete_search`].
pub const SEARCH_MAX_ITERATIONS: usize = 2_000_000;
/// Entries below this probability are dropped from solved distributions.
pub const PRUNE_BELOW: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscreteSparc {
    pub q: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub a: Vec<usize>,
}

impl CellId {
    /// Whether the closed cell meets the simplex at all.
    pub fn meets_simplex(&self, n: usize) -> bool {
        let s: usize = self.a.iter().sum();
        self.a.iter().all(|&x| x < n) && s <= n && n <= s + self.a.len()
    }

    /// Whether the cell holds simplex segments of positive length. Cells
    /// that only touch the simplex at their lowest or highest corner hold
    /// none, so their constraints would be vacuous.
    pub fn is_admissible(&self, n: usize) -> bool {
        let s: usize = self.a.iter().sum();
        self.a.iter().all(|&x| x < n) && s < n && n < s + self.a.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteEntry {
    pub sparc: DiscreteSparc,
    pub p: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDistribution {
    k: usize,
    n: usize,
    entries: Vec<DiscreteEntry>,
    bound: f64,
}

impl DiscreteDistribution {
    pub fn new(k: usize, n: usize, entries: Vec<DiscreteEntry>, bound: f64) -> Result<Self> {
        let d = DiscreteDistribution { k, n, entries, bound };
        d.validate()?;
        Ok(d)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[DiscreteEntry] {
        &self.entries
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || self.n == 0 {
            return Err(Error::InvalidDistribution(format!("k = {}, N = {}", self.k, self.n)));
        }
        if self.entries.is_empty() {
            return Err(Error::InvalidDistribution("no entries".into()));
        }
        let mut total = 0.0;
        for e in &self.entries {
            if e.sparc.q.len() != self.k - 1 || e.sparc.q.iter().any(|&q| q >= self.n) {
                return Err(Error::InvalidDistribution(format!("bad sparc {:?}", e.sparc.q)));
            }
            if !(e.p >= 0.0) {
                return Err(Error::InvalidDistribution(format!("negative probability {}", e.p)));
            }
            total += e.p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(())
    }

    /// Draws a discrete sparc, its thresholds and a uniform ordering.
    pub fn sample_sparc(&self, rng: &mut RngState) -> Sparc {
        let u = rng.uniform();
        let mut acc = 0.0;
        let mut pick = self.entries.len() - 1;
        for (idx, e) in self.entries.iter().enumerate() {
            acc += e.p;
            if u < acc {
                pick = idx;
                break;
            }
        }
        let q = &self.entries[pick].sparc.q;
        let order = rng.permutation(self.k);
        let mut thresholds = vec![1.0; self.k];
        let n = self.n as f64;
        for (m, &qm) in q.iter().enumerate() {
            thresholds[order[m]] = (qm as f64 + rng.uniform_pos()) / n;
        }
        Sparc::new_unchecked(order, thresholds, self.k - 1)
    }
}

/// All `q` vectors in lexicographic order.
pub fn all_sparcs(k: usize, n: usize) -> Vec<DiscreteSparc> {
    let len = k - 1;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            let mut q = vec![0; len];
            for m in (0..len).rev() {
                q[m] = idx % n;
                idx /= n;
            }
            DiscreteSparc { q }
        })
        .collect()
}

/// Admissible cells in lexicographic order; with `sorted_tail`, only cells
/// with `a_2 <= a_3 <= ... <= a_{k-1}`.
pub fn admissible_cells(k: usize, n: usize, sorted_tail: bool) -> Vec<CellId> {
    let mut out = Vec::new();
    let mut a = vec![0usize; k];
    loop {
        let cell = CellId { a: a.clone() };
        let tail_ok = !sorted_tail || a[2.min(k)..].windows(2).all(|w| w[0] <= w[1]);
        if tail_ok && cell.is_admissible(n) {
            out.push(cell);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if a[pos] + 1 < n {
                a[pos] += 1;
                break;
            }
            a[pos] = 0;
        }
    }
}

/// Cut-density bound contributed by sparc `q` in cell `a` on segments
/// aligned with `(i, j)`, for one fixed ordering.
pub fn fixed_order_coefficient(q: &[usize], a: &[usize], order: &[usize], al: [usize; 2], n: usize) -> f64 {
    let k = order.len();
    let mut total = 0.0;
    for l in al {
        let pos = order.iter().position(|&t| t == l).expect("order is a permutation");
        if pos > k - 2 || q[pos] != a[l] {
            continue;
        }
        let claimed_earlier = (0..pos).any(|m| q[m] < a[order[m]]);
        if !claimed_earlier {
            total += n as f64;
        }
    }
    total
}

/// [`fixed_order_coefficient`] averaged over all orderings.
pub fn cell_coefficient(q: &[usize], a: &[usize], al: [usize; 2], n: usize, orders: &[Vec<usize>]) -> f64 {
    let s: f64 = orders.iter().map(|o| fixed_order_coefficient(q, a, o, al, n)).sum();
    s / orders.len() as f64
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Whether `q` keeps every slice inside the corner band of width `c / N`
/// (boxes `q >= N - c`) or every slice outside it.
pub fn respects_corner_range(q: &[usize], n: usize, c: usize) -> bool {
    let inside = |b: &usize| *b + c >= n;
    q.iter().all(inside) || !q.iter().any(inside)
}

/// Variable layout of the search LP: `x_q` in [`all_sparcs`] order, then `tau`.
pub fn build_discrete_lp(k: usize, n: usize) -> Result<LpProblem> {
    build_discrete_lp_with(k, n, None)
}

/// As [`build_discrete_lp`]; with `corner_range = Some(c)`, sparcs mixing
/// slices inside and outside the width-`c / N` corner band are fixed at 0.
pub fn build_discrete_lp_with(k: usize, n: usize, corner_range: Option<usize>) -> Result<LpProblem> {
    if k < 2 || n == 0 {
        return Err(Error::DomainError(format!("k = {k}, N = {n}")));
    }
    if let Some(c) = corner_range {
        if c == 0 || c >= n {
            return Err(Error::DomainError(format!("corner range {c} outside 1..{n}")));
        }
    }
    let vars = (n as u128).pow(k as u32 - 1);
    if vars > MAX_SPARC_VARIABLES as u128 {
        return Err(Error::TooLarge(format!("{vars} sparc variables")));
    }
    let sparcs = all_sparcs(k, n);
    let cells = admissible_cells(k, n, true);
    if cells.len() > MAX_CELL_CONSTRAINTS {
        return Err(Error::TooLarge(format!("{} cell constraints", cells.len())));
    }
    let orders = permutations(k);
    let tau = sparcs.len();
    let mut p = LpProblem::new(sparcs.len() + 1, Objective::Minimize);
    for (idx, s) in sparcs.iter().enumerate() {
        let name = s.q.iter().map(|q| format!("{q}")).collect::<Vec<_>>().join("_");
        p.set_name(idx, format!("x_{name}"));
        if corner_range.is_some_and(|c| !respects_corner_range(&s.q, n, c)) {
            p.set_bounds(idx, 0.0, 0.0);
        }
    }
    p.set_name(tau, "tau");
    p.set_cost(tau, 1.0);
    let ones: Vec<(usize, f64)> = (0..sparcs.len()).map(|j| (j, 1.0)).collect();
    p.add_constraint(&ones, RowSense::Eq, 1.0);
    for cell in &cells {
        let mut row: Vec<(usize, f64)> = sparcs
            .iter()
            .enumerate()
            .map(|(j, s)| (j, cell_coefficient(&s.q, &cell.a, [0, 1], n, &orders)))
            .filter(|&(_, c)| c != 0.0)
            .collect();
        row.push((tau, -1.0));
        p.add_constraint(&row, RowSense::Le, 0.0);
    }
    Ok(p)
}

/// Solves the search LP; the returned bound is the optimal `tau`.
pub fn solve_discrete_search(k: usize, n: usize) -> Result<DiscreteDistribution> {
    solve_discrete_search_with(k, n, None)
}

/// [`solve_discrete_search`] under an optional corner-range restriction.
pub fn solve_discrete_search_with(k: usize, n: usize, corner_range: Option<usize>) -> Result<DiscreteDistribution> {
    let p = build_discrete_lp_with(k, n, corner_range)?;
    let s = solve_lp(&p, SEARCH_MAX_ITERATIONS);
    if s.status != LpStatus::Optimal {
        return Err(Error::LpFailed(s.status));
    }
    let sparcs = all_sparcs(k, n);
    let mut entries: Vec<DiscreteEntry> = sparcs
        .into_iter()
        .zip(&s.values)
        .filter(|(_, &x)| x >= PRUNE_BELOW)
        .map(|(sparc, &p)| DiscreteEntry { sparc, p })
        .collect();
    let total: f64 = entries.iter().map(|e| e.p).sum();
    for e in &mut entries {
        e.p /= total;
    }
    DiscreteDistribution::new(k, n, entries, s.values[p.num_vars() - 1])
}

/// The sampling scheme realizing a distribution (random ordering included).
pub fn reconstruct_scheme(d: &DiscreteDistribution) -> SchemeConfig {
    SchemeConfig::Discrete(d.clone())
}

/// Largest LP cell bound of `d` over all admissible cells and alignments,
/// either averaged over orderings or with every sparc using `order`.
pub fn max_cell_bound(d: &DiscreteDistribution, order: Option<&[usize]>) -> f64 {
    let (k, n) = (d.k, d.n);
    let orders = permutations(k);
    let mut best = 0.0f64;
    for cell in admissible_cells(k, n, false) {
        for i in 0..k {
            for j in i + 1..k {
                let v: f64 = d
                    .entries
                    .iter()
                    .map(|e| {
                        let c = match order {
                            Some(o) => fixed_order_coefficient(&e.sparc.q, &cell.a, o, [i, j], n),
                            None => cell_coefficient(&e.sparc.q, &cell.a, [i, j], n, &orders),
                        };
                        e.p * c
                    })
                    .sum();
                best = best.max(v);
            }
        }
    }
    best
}
