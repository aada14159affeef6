//! The `k = 3` lower-bound family `G_N`.
//!
//! `G_N` lives on the triangular grid of step `1/(3N)`. For terminals
//! `i != j` with third terminal `l`, the path `p(i, j, d)` runs from vertex
//! `i` straight toward `l` for distance `d`, then parallel to side `ij` at
//! `x_l = d`, then straight to vertex `j`. Each pair contributes `N` copies
//! of `p(i, j, 0)` and one `p(i, j, m/(3N))` for `m = 1..2N`; a grid edge
//! costs the number of paths through it.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{brute_force_min_cut, planar_dual_min_3cut, CutWitness, Edge, MeshGraph, WeightedGraph};
use crate::relaxation::Embedding;
use crate::scalar::Rational;

/// Largest `N` accepted by [`verify_gn`].
pub const MAX_VERIFY_N: usize = 30;

/// The path `p(i, j, m / (3N))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LbPath {
    pub i: usize,
    pub j: usize,
    pub m: usize,
}

impl LbPath {
    pub fn third(&self) -> usize {
        3 - self.i - self.j
    }

    /// `d` for grid step `1/(3N)`.
    pub fn d(&self, n: usize) -> Rational {
        Rational::new(self.m as i64, 3 * n as i64)
    }

    /// Grid nodes visited, as lattice points of the mesh with `M = 3N`.
    pub fn lattice_walk(&self, big_m: usize) -> Vec<[usize; 3]> {
        let (i, j, l) = (self.i, self.j, self.third());
        let at = |ci: usize, cj: usize, cl: usize| {
            let mut a = [0; 3];
            a[i] = ci;
            a[j] = cj;
            a[l] = cl;
            a
        };
        let mut walk = Vec::new();
        // i -> a
        for s in 0..=self.m {
            walk.push(at(big_m - s, 0, s));
        }
        // a -> b, at x_l = m / M
        let side = big_m - self.m;
        for s in 1..=side {
            walk.push(at(side - s, s, self.m));
        }
        // b -> j
        for s in 1..=self.m {
            walk.push(at(0, side + s, self.m - s));
        }
        walk
    }

    /// `1 + d`.
    pub fn length(&self, n: usize) -> Rational {
        Rational::from_integer(1) + self.d(n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundInstance {
    pub n: usize,
    /// Grid with `M = 3N` and integer path-count weights.
    pub mesh: MeshGraph<Rational>,
    /// All grid nodes; only edges of positive weight.
    pub graph: WeightedGraph<Rational>,
    /// Every node at its grid point.
    pub embedding: Embedding<Rational>,
    pub volume: Rational,
    /// The `9N` paths, copies listed separately.
    pub paths: Vec<LbPath>,
}

pub fn gn_paths(n: usize) -> Vec<LbPath> {
    let mut paths = Vec::with_capacity(9 * n);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for _ in 0..n {
            paths.push(LbPath { i, j, m: 0 });
        }
        for m in 1..=2 * n {
            paths.push(LbPath { i, j, m });
        }
    }
    paths
}

pub fn generate_gn(n: usize) -> Result<LowerBoundInstance> {
    if n == 0 {
        return Err(Error::InvalidGraph("G_N needs N >= 1".into()));
    }
    let big_m = 3 * n;
    let skeleton = MeshGraph::<Rational>::uniform(big_m, Rational::from_integer(0))?;
    let mut counts = vec![0i64; skeleton.edges().len()];
    let paths = gn_paths(n);
    for p in &paths {
        let walk = p.lattice_walk(big_m);
        for w in walk.windows(2) {
            let u = skeleton.node_id(w[0]).expect("walk stays on the grid");
            let v = skeleton.node_id(w[1]).expect("walk stays on the grid");
            let e = skeleton
                .edge_between(u, v)
                .ok_or_else(|| Error::InvalidGraph(format!("{:?} -> {:?} is not a grid edge", w[0], w[1])))?;
            counts[e] += 1;
        }
    }
    let weights: Vec<Rational> = counts.iter().map(|&c| Rational::from_integer(c)).collect();
    let mesh = MeshGraph::new(big_m, weights)?;
    let edges: Vec<Edge<Rational>> = mesh
        .edges()
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c > 0)
        .map(|(&(u, v), &c)| Edge {
            u,
            v,
            weight: Rational::from_integer(c),
        })
        .collect();
    let graph = WeightedGraph::new(3, mesh.node_count(), (0..3).map(|l| mesh.terminal(l)).collect(), edges)?;
    let embedding = Embedding::new(&graph, (0..mesh.node_count()).map(|v| mesh.point(v)).collect())?;
    let volume = Rational::new(counts.iter().sum::<i64>(), big_m as i64);
    Ok(LowerBoundInstance {
        n,
        mesh,
        graph,
        embedding,
        volume,
        paths,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GnReport {
    pub n: usize,
    pub volume: Rational,
    pub min_cut: Rational,
    pub ratio: Rational,
    pub witness: CutWitness,
    /// Exhaustive optimum, computed for `N = 1` only.
    pub brute_force: Option<Rational>,
}

pub fn verify_gn(n: usize) -> Result<GnReport> {
    if n > MAX_VERIFY_N {
        return Err(Error::TooLarge(format!("N = {n} exceeds {MAX_VERIFY_N}")));
    }
    let inst = generate_gn(n)?;
    let (min_cut, witness) = planar_dual_min_3cut(&inst.mesh)?;
    let brute_force = if n == 1 {
        Some(brute_force_min_cut(&inst.graph)?.0)
    } else {
        None
    };
    Ok(GnReport {
        n,
        volume: inst.volume,
        min_cut,
        ratio: min_cut / inst.volume,
        witness,
        brute_force,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_multiway_cut;
    use crate::relaxation::{solve_relaxation, volume};
    use crate::scalar::Scalar;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn path_lengths() {
        let p = LbPath { i: 1, j: 2, m: 1 };
        assert_eq!(p.length(2), r(7, 6));
        // walk length in grid steps equals length times M
        for n in 1..4 {
            for p in gn_paths(n) {
                let steps = p.lattice_walk(3 * n).len() - 1;
                assert_eq!(Rational::from_integer(steps as i64), p.length(n) * Rational::from_integer(3 * n as i64));
            }
        }
    }

    #[test]
    fn volumes() {
        for n in [1usize, 2, 3, 7] {
            let inst = generate_gn(n).unwrap();
            assert_eq!(inst.volume, Rational::from_integer(11 * n as i64 + 1));
            assert_eq!(inst.paths.len(), 9 * n);
            assert_eq!(volume(&inst.graph, &inst.embedding).unwrap(), inst.volume);
            assert!(inst.mesh.weights().iter().all(|w| w.is_integer() && *w >= Rational::from_integer(0)));
        }
    }

    #[test]
    fn small_instances_are_exact() {
        for n in 1..=3usize {
            let rep = verify_gn(n).unwrap();
            assert_eq!(rep.min_cut, Rational::from_integer(12 * n as i64));
            assert_eq!(rep.ratio, r(12 * n as i64, 11 * n as i64 + 1));
            let inst = generate_gn(n).unwrap();
            let cut: Rational = rep.witness.cut_edges.iter().map(|&e| inst.mesh.weights()[e]).sum();
            assert_eq!(cut, rep.min_cut);
        }
        assert_eq!(verify_gn(1).unwrap().brute_force, Some(Rational::from_integer(12)));
        assert!(matches!(verify_gn(31), Err(Error::TooLarge(_))));
    }

    #[test]
    fn witness_is_a_cut() {
        let inst = generate_gn(2).unwrap();
        let rep = verify_gn(2).unwrap();
        let g = inst.mesh.to_graph();
        assert!(is_multiway_cut(&g, &rep.witness.cut_edges).unwrap());
    }

    #[test]
    fn g1_relaxation_is_below_the_cut() {
        let inst = generate_gn(1).unwrap();
        let (_, v) = solve_relaxation(&inst.graph).unwrap();
        // no cheaper placement than the grid exists here
        assert!((v - 12.0).abs() < 1e-6, "{v}");
        assert_eq!(inst.volume.to_f64(), 12.0);
    }
}
