//! Triangular mesh over the 3-simplex and the planar-dual min 3-way cut.
//!
//! Primal nodes are lattice points `(a0, a1, a2)` with `a0 + a1 + a2 = M`,
//! i.e. simplex points with coordinates in multiples of `1/M`. The dual has
//! one node per triangular face plus three auxiliary nodes, auxiliary node
//! `l` standing for the region beyond the side `x_l = 0`. Every primal edge
//! is crossed by exactly one dual edge.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Edge, WeightedGraph};
use crate::error::{Error, Result};
use crate::geometry::SimplexPoint;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct MeshGraph<T = f64> {
    m: usize,
    nodes: Vec<[usize; 3]>,
    edges: Vec<(usize, usize)>,
    faces: Vec<[usize; 3]>,
    // dual endpoints of the dual edge crossing each primal edge
    crossing: Vec<(usize, usize)>,
    edge_index: BTreeMap<(usize, usize), usize>,
    weights: Vec<T>,
}

impl<T: Scalar> MeshGraph<T> {
    /// Mesh with `M` subdivisions per side and the given primal edge
    /// weights (indexed like [`MeshGraph::edges`]).
    pub fn new(m: usize, weights: Vec<T>) -> Result<Self> {
        let mut mesh = Self::structure(m)?;
        if weights.len() != mesh.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: mesh.edges.len(),
                found: weights.len(),
            });
        }
        if let Some(id) = weights.iter().position(|w| *w < T::zero()) {
            return Err(Error::NegativeWeight(id));
        }
        mesh.weights = weights;
        Ok(mesh)
    }

    pub fn uniform(m: usize, weight: T) -> Result<Self> {
        let n = Self::edge_count(m);
        Self::new(m, vec![weight; n])
    }

    pub fn edge_count(m: usize) -> usize {
        3 * m * (m + 1) / 2
    }

    fn structure(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("mesh needs M >= 1".into()));
        }
        let mut nodes = Vec::with_capacity((m + 1) * (m + 2) / 2);
        for a0 in 0..=m {
            for a1 in 0..=m - a0 {
                nodes.push([a0, a1, m - a0 - a1]);
            }
        }
        let id = |a: [usize; 3]| lattice_id(m, a);
        let mut edges = Vec::with_capacity(Self::edge_count(m));
        let mut edge_index = BTreeMap::new();
        for (u, &a) in nodes.iter().enumerate() {
            // move one unit from coordinate `from` to coordinate `to`
            for (to, from) in [(0usize, 1usize), (0, 2), (1, 2)] {
                if a[from] == 0 {
                    continue;
                }
                let mut b = a;
                b[to] += 1;
                b[from] -= 1;
                let v = id(b);
                edge_index.insert((u.min(v), u.max(v)), edges.len());
                edges.push((u, v));
            }
        }
        let mut faces = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m - i {
                let l = m - 1 - i - j;
                faces.push([id([i + 1, j, l]), id([i, j + 1, l]), id([i, j, l + 1])]);
            }
        }
        if m >= 2 {
            for i in 0..m - 1 {
                for j in 0..m - 1 - i {
                    let l = m - 2 - i - j;
                    faces.push([id([i + 1, j + 1, l]), id([i + 1, j, l + 1]), id([i, j + 1, l + 1])]);
                }
            }
        }
        let mut sides: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (f, tri) in faces.iter().enumerate() {
            for (x, y) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
                sides[edge_index[&(x.min(y), x.max(y))]].push(f);
            }
        }
        let nf = faces.len();
        let crossing = edges
            .iter()
            .zip(&sides)
            .map(|(&(u, v), fs)| match fs.as_slice() {
                [f, g] => (*f, *g),
                [f] => {
                    let side = (0..3)
                        .find(|&l| nodes[u][l] == 0 && nodes[v][l] == 0)
                        .expect("boundary edge lies on a side");
                    (*f, nf + side)
                }
                _ => unreachable!("each edge borders one or two faces"),
            })
            .collect();
        Ok(MeshGraph {
            m,
            nodes,
            edges,
            faces,
            crossing,
            edge_index,
            weights: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Lattice coordinates of a primal node.
    pub fn lattice(&self, node: usize) -> [usize; 3] {
        self.nodes[node]
    }

    pub fn node_id(&self, a: [usize; 3]) -> Option<usize> {
        (a[0] + a[1] + a[2] == self.m).then(|| lattice_id(self.m, a))
    }

    pub fn point(&self, node: usize) -> SimplexPoint<Rational> {
        let m = self.m as i64;
        SimplexPoint::new(self.nodes[node].iter().map(|&c| Rational::new(c as i64, m)).collect())
            .expect("lattice points lie in the simplex")
    }

    /// Primal node of terminal `l`.
    pub fn terminal(&self, l: usize) -> usize {
        let mut a = [0; 3];
        a[l] = self.m;
        lattice_id(self.m, a)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Dual node id of auxiliary node `l` (the side `x_l = 0`).
    pub fn aux(&self, l: usize) -> usize {
        self.faces.len() + l
    }

    pub fn dual_node_count(&self) -> usize {
        self.faces.len() + 3
    }

    /// Dual endpoints of the dual edge crossing primal edge `e`.
    pub fn crossing(&self, e: usize) -> (usize, usize) {
        self.crossing[e]
    }

    pub fn is_boundary(&self, e: usize) -> bool {
        self.crossing[e].1 >= self.faces.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn to_graph(&self) -> WeightedGraph<T> {
        WeightedGraph::new(
            3,
            self.nodes.len(),
            (0..3).map(|l| self.terminal(l)).collect(),
            self.edges
                .iter()
                .zip(&self.weights)
                .map(|(&(u, v), &weight)| Edge { u, v, weight })
                .collect(),
        )
        .expect("mesh graphs are valid")
    }

    fn dual_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.dual_node_count()];
        for (e, &(x, y)) in self.crossing.iter().enumerate() {
            adj[x].push((y, e));
            adj[y].push((x, e));
        }
        adj
    }

    /// Shortest dual distances from `source` with the primal edge used to
    /// reach each node.
    pub fn dual_shortest_paths(&self, source: usize) -> (Vec<Option<T>>, Vec<Option<usize>>) {
        dijkstra(&self.dual_adjacency(), &self.weights, source)
    }
}

fn lattice_id(m: usize, a: [usize; 3]) -> usize {
    let a0 = a[0];
    a0 * (m + 1) - a0 * a0.saturating_sub(1) / 2 + a[1]
}

struct Queued<T> {
    dist: T,
    node: usize,
}

impl<T: Scalar> PartialEq for Queued<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Queued<T> {}
impl<T: Scalar> PartialOrd for Queued<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Queued<T> {
    // reversed: BinaryHeap pops the smallest distance first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

fn dijkstra<T: Scalar>(
    adj: &[Vec<(usize, usize)>],
    weights: &[T],
    source: usize,
) -> (Vec<Option<T>>, Vec<Option<usize>>) {
    let n = adj.len();
    let mut dist: Vec<Option<T>> = vec![None; n];
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(T::zero());
    heap.push(Queued {
        dist: T::zero(),
        node: source,
    });
    while let Some(Queued { dist: d, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        for &(next, e) in &adj[node] {
            let nd = d + weights[e];
            let better = match dist[next] {
                None => true,
                Some(old) => nd < old,
            };
            if better && !done[next] {
                dist[next] = Some(nd);
                via[next] = Some(e);
                heap.push(Queued { dist: nd, node: next });
            }
        }
    }
    (dist, via)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualCase {
    /// Two dual paths from one auxiliary node to the other two.
    TwoPaths { apex: usize },
    /// Three dual paths from an interior face to the three auxiliary nodes.
    ThreePaths { center: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutWitness {
    pub case: DualCase,
    /// Primal edges crossed by the chosen dual paths, sorted, no repeats.
    pub cut_edges: Vec<usize>,
}

/// Minimum 3-way cut of a weighted mesh via shortest dual paths.
///
/// The value is the smaller of `min_X dist(X,Y) + dist(X,Z)` over the
/// auxiliary nodes and `min_f dist(f,A) + dist(f,B) + dist(f,C)` over faces.
pub fn planar_dual_min_3cut<T: Scalar>(mesh: &MeshGraph<T>) -> Result<(T, CutWitness)> {
    if let Some(id) = mesh.weights.iter().position(|w| *w < T::zero()) {
        return Err(Error::NegativeWeight(id));
    }
    let adj = mesh.dual_adjacency();
    let runs: Vec<(Vec<Option<T>>, Vec<Option<usize>>)> = (0..3)
        .map(|l| dijkstra(&adj, &mesh.weights, mesh.aux(l)))
        .collect();
    let d = |l: usize, x: usize| runs[l].0[x].expect("the dual graph is connected");

    let mut best: Option<(T, DualCase)> = None;
    let mut consider = |v: T, case: DualCase| {
        if best.map_or(true, |(b, _)| v < b) {
            best = Some((v, case));
        }
    };
    for x in 0..3 {
        let v = (0..3).filter(|&y| y != x).fold(T::zero(), |acc, y| acc + d(x, mesh.aux(y)));
        consider(v, DualCase::TwoPaths { apex: x });
    }
    for f in 0..mesh.face_count() {
        consider(d(0, f) + d(1, f) + d(2, f), DualCase::ThreePaths { center: f });
    }
    let (value, case) = best.expect("at least one candidate");

    let mut cut = Vec::new();
    let mut trace = |l: usize, mut node: usize| {
        let (_, via) = &runs[l];
        while let Some(e) = via[node] {
            cut.push(e);
            let (a, b) = mesh.crossing[e];
            node = if a == node { b } else { a };
        }
    };
    match case {
        DualCase::TwoPaths { apex } => {
            for y in (0..3).filter(|&y| y != apex) {
                trace(apex, mesh.aux(y));
            }
        }
        DualCase::ThreePaths { center } => {
            for l in 0..3 {
                trace(l, center);
            }
        }
    }
    cut.sort_unstable();
    cut.dedup();
    Ok((value, CutWitness { case, cut_edges: cut }))
}
