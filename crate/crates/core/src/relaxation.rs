//! The simplex-embedding relaxation: its LP, volumes, and aligned
//! instances ready for rounding.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{alignment_of, decompose_aligned, half_l1_distance, Alignment, Segment, SimplexPoint};
use crate::graph::{Labeling, WeightedGraph};
use crate::lp::{solve_lp, LpProblem, LpStatus, Objective, RowSense};
use crate::scalar::{sum, Scalar};

/// Pivot budget used by [`solve_relaxation`].
pub const RELAXATION_MAX_ITERATIONS: usize = 2_000_000;
/// Largest edge count [`solve_relaxation`] accepts; bigger graphs should be
/// exported with [`build_embedding_lp`] and solved elsewhere.
pub const MAX_RELAX_EDGES: usize = 200;

/// One simplex point per graph node, terminal `i` at vertex `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T = f64> {
    points: Vec<SimplexPoint<T>>,
}

impl<T: Scalar> Embedding<T> {
    pub fn new(g: &WeightedGraph<impl Scalar>, points: Vec<SimplexPoint<T>>) -> Result<Self> {
        if points.len() < g.node_count() {
            return Err(Error::MissingPoint(points.len()));
        }
        if points.len() > g.node_count() {
            return Err(Error::DimensionMismatch {
                expected: g.node_count(),
                found: points.len(),
            });
        }
        for p in &points {
            if p.k() != g.k() {
                return Err(Error::DimensionMismatch {
                    expected: g.k(),
                    found: p.k(),
                });
            }
        }
        for (i, &t) in g.terminals().iter().enumerate() {
            if points[t] != SimplexPoint::vertex(g.k(), i) {
                return Err(Error::InvalidGraph(format!(
                    "terminal {i} (node {t}) is not embedded at its vertex"
                )));
            }
        }
        Ok(Embedding { points })
    }

    pub fn points(&self) -> &[SimplexPoint<T>] {
        &self.points
    }

    pub fn point(&self, node: usize) -> Result<&SimplexPoint<T>> {
        self.points.get(node).ok_or(Error::MissingPoint(node))
    }

    pub fn to_f64(&self) -> Embedding<f64> {
        Embedding {
            points: self.points.iter().map(|p| p.to_f64()).collect(),
        }
    }
}

/// Places every node at the vertex of its label; its volume is the cut cost.
pub fn vertex_embedding<T: Scalar, W: Scalar>(g: &WeightedGraph<W>, lab: &Labeling) -> Result<Embedding<T>> {
    lab.validate(g)?;
    Ok(Embedding {
        points: lab
            .labels()
            .iter()
            .map(|&l| SimplexPoint::vertex(g.k(), l))
            .collect(),
    })
}

/// Index of coordinate `l` of node `v` in the embedding LP.
pub fn y_var(k: usize, v: usize, l: usize) -> usize {
    v * k + l
}

/// Index of the projection width of edge `e` on coordinate `l`.
pub fn z_var(k: usize, node_count: usize, e: usize, l: usize) -> usize {
    node_count * k + e * k + l
}

/// The embedding LP: minimize `sum_e w_e * (1/2) sum_l z[e,l]` with
/// `z[e,l] >= |y[u,l] - y[v,l]|`, every node in the simplex and terminals
/// pinned to their vertices.
pub fn build_embedding_lp<W: Scalar>(g: &WeightedGraph<W>) -> LpProblem {
    let k = g.k();
    let n = g.node_count();
    let m = g.edges().len();
    let mut p = LpProblem::new(n * k + m * k, Objective::Minimize);
    for v in 0..n {
        for l in 0..k {
            p.set_name(y_var(k, v, l), format!("y_{v}_{l}"));
        }
        let row: Vec<(usize, f64)> = (0..k).map(|l| (y_var(k, v, l), 1.0)).collect();
        p.add_constraint(&row, RowSense::Eq, 1.0);
    }
    for (i, &t) in g.terminals().iter().enumerate() {
        for l in 0..k {
            let target = if l == i { 1.0 } else { 0.0 };
            p.add_constraint(&[(y_var(k, t, l), 1.0)], RowSense::Eq, target);
        }
    }
    for (id, e) in g.edges().iter().enumerate() {
        for l in 0..k {
            let z = z_var(k, n, id, l);
            p.set_name(z, format!("z_{id}_{l}"));
            p.set_cost(z, e.weight.to_f64() / 2.0);
            let (yu, yv) = (y_var(k, e.u, l), y_var(k, e.v, l));
            p.add_constraint(&[(z, 1.0), (yu, -1.0), (yv, 1.0)], RowSense::Ge, 0.0);
            p.add_constraint(&[(z, 1.0), (yu, 1.0), (yv, -1.0)], RowSense::Ge, 0.0);
        }
    }
    p
}

/// Minimum-volume embedding and its volume.
pub fn solve_relaxation<W: Scalar>(g: &WeightedGraph<W>) -> Result<(Embedding<f64>, f64)> {
    if g.edges().len() > MAX_RELAX_EDGES {
        return Err(Error::TooLarge(format!(
            "{} edges exceed {MAX_RELAX_EDGES}; export the LP instead",
            g.edges().len()
        )));
    }
    let p = build_embedding_lp(g);
    let s = solve_lp(&p, RELAXATION_MAX_ITERATIONS);
    if s.status != LpStatus::Optimal {
        return Err(Error::LpFailed(s.status));
    }
    let k = g.k();
    let mut points = Vec::with_capacity(g.node_count());
    for v in 0..g.node_count() {
        let mut c: Vec<f64> = (0..k).map(|l| s.values[y_var(k, v, l)].max(0.0)).collect();
        let total: f64 = c.iter().sum();
        for x in &mut c {
            *x /= total;
        }
        points.push(SimplexPoint::new(c)?);
    }
    for (i, &t) in g.terminals().iter().enumerate() {
        points[t] = SimplexPoint::vertex(k, i);
    }
    let emb = Embedding { points };
    Ok((emb, s.objective_value))
}

/// `sum_e w_e * |e|` over the embedded edges.
pub fn volume<T: Scalar>(g: &WeightedGraph<T>, emb: &Embedding<T>) -> Result<T> {
    let mut terms = Vec::with_capacity(g.edges().len());
    for e in g.edges() {
        let d = half_l1_distance(emb.point(e.u)?, emb.point(e.v)?)?;
        terms.push(e.weight * d);
    }
    Ok(sum(terms))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlignedEdge<T = f64> {
    /// Endpoints as indices into [`AlignedInstance::nodes`].
    pub from: usize,
    pub to: usize,
    pub segment: Segment<T>,
    pub alignment: Alignment,
    pub weight: T,
    pub parent: usize,
}

/// An embedded graph whose edges were replaced by aligned paths.
#[derive(Clone, Debug, PartialEq)]
pub struct AlignedInstance<T = f64> {
    graph: WeightedGraph<T>,
    nodes: Vec<SimplexPoint<T>>,
    edges: Vec<AlignedEdge<T>>,
}

impl<T: Scalar> AlignedInstance<T> {
    pub fn graph(&self) -> &WeightedGraph<T> {
        &self.graph
    }

    /// Original nodes first (same ids as the graph), then path waypoints.
    pub fn nodes(&self) -> &[SimplexPoint<T>] {
        &self.nodes
    }

    pub fn original_points(&self) -> &[SimplexPoint<T>] {
        &self.nodes[..self.graph.node_count()]
    }

    pub fn edges(&self) -> &[AlignedEdge<T>] {
        &self.edges
    }

    pub fn weighted_length(&self) -> T {
        sum(self.edges.iter().map(|e| e.weight * e.segment.length()))
    }
}

/// Replaces every embedded edge by at most `k - 1` aligned segments with
/// the same total length.
pub fn align_embedding<T: Scalar>(g: &WeightedGraph<T>, emb: &Embedding<T>) -> Result<AlignedInstance<T>> {
    if emb.points.len() != g.node_count() {
        return Err(Error::MissingPoint(emb.points.len().min(g.node_count())));
    }
    let mut nodes = emb.points.clone();
    let mut edges = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        let seg = Segment::new(emb.points[e.u].clone(), emb.points[e.v].clone())?;
        let pieces = decompose_aligned(&seg);
        let mut prev = e.u;
        let count = pieces.len();
        for (n, piece) in pieces.into_iter().enumerate() {
            let next = if n + 1 == count {
                e.v
            } else {
                nodes.push(piece.end().clone());
                nodes.len() - 1
            };
            let alignment = alignment_of(&piece)?.ok_or(Error::UnalignedSegment)?;
            edges.push(AlignedEdge {
                from: prev,
                to: next,
                segment: piece,
                alignment,
                weight: e.weight,
                parent: id,
            });
            prev = next;
        }
    }
    Ok(AlignedInstance {
        graph: g.clone(),
        nodes,
        edges,
    })
}
