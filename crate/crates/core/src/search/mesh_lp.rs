//! The `k = 3` worst-case search on the triangular mesh.
//!
//! Weights on primal mesh edges are chosen so that every 3-way cut costs at
//! least 1 while the volume of the identity embedding, `sum_e w_e / M`, is
//! as small as possible; `1 / W` then lower-bounds the integrality gap.
//! Distance variables `d[s][y]` can be no longer than dual shortest paths
//! from source `s`, and the cut constraints ask that every pair of paths
//! from an auxiliary node, and every triple of paths meeting at a face,
//! has total length at least 1.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{planar_dual_min_3cut, MeshGraph};
use crate::lp::{solve_lp, LpProblem, LpStatus, Objective, RowSense};

/// Largest `M` accepted by [`build_mesh_lp`].
pub const MAX_MESH_M: usize = 10;
/// Pivot budget for [`solve_mesh_lp`].
pub const MESH_MAX_ITERATIONS: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshSources {
    /// Distances from the three auxiliary nodes only. Dual distances are
    /// symmetric, so `dist(f, X) = dist(X, f)` covers the face constraints.
    Auxiliary,
    /// Distances from every dual node.
    All,
}

/// Column layout of a mesh LP.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshLpLayout {
    pub m: usize,
    pub sources: Vec<usize>,
    pub dual_nodes: usize,
    pub edges: usize,
}

impl MeshLpLayout {
    pub fn w(&self, e: usize) -> usize {
        e
    }

    pub fn d(&self, source_slot: usize, y: usize) -> usize {
        self.edges + source_slot * self.dual_nodes + y
    }
}

pub fn build_mesh_lp(m: usize, sources: MeshSources) -> Result<(LpProblem, MeshLpLayout)> {
    if m > MAX_MESH_M {
        return Err(Error::TooLarge(format!("M = {m} exceeds {MAX_MESH_M}")));
    }
    let mesh = MeshGraph::<f64>::uniform(m, 0.0)?;
    let nd = mesh.dual_node_count();
    let ne = mesh.edges().len();
    let src: Vec<usize> = match sources {
        MeshSources::Auxiliary => (0..3).map(|l| mesh.aux(l)).collect(),
        MeshSources::All => (0..nd).collect(),
    };
    let layout = MeshLpLayout {
        m,
        sources: src.clone(),
        dual_nodes: nd,
        edges: ne,
    };
    let mut p = LpProblem::new(ne + src.len() * nd, Objective::Minimize);
    for e in 0..ne {
        let (u, v) = mesh.edges()[e];
        p.set_name(layout.w(e), format!("w_{u}_{v}"));
        p.set_cost(layout.w(e), 1.0 / m as f64);
    }
    for (slot, &s) in src.iter().enumerate() {
        for y in 0..nd {
            p.set_name(layout.d(slot, y), format!("d_{s}_{y}"));
        }
        p.set_bounds(layout.d(slot, s), 0.0, 0.0);
        for e in 0..ne {
            let (y, z) = mesh.crossing(e);
            let (dy, dz, w) = (layout.d(slot, y), layout.d(slot, z), layout.w(e));
            p.add_constraint(&[(dz, 1.0), (dy, -1.0), (w, -1.0)], RowSense::Le, 0.0);
            p.add_constraint(&[(dy, 1.0), (dz, -1.0), (w, -1.0)], RowSense::Le, 0.0);
        }
    }
    let slot_of = |x: usize| src.iter().position(|&s| s == x);
    for f in 0..mesh.face_count() {
        let row: Vec<(usize, f64)> = match sources {
            MeshSources::Auxiliary => (0..3).map(|l| (layout.d(l, f), 1.0)).collect(),
            MeshSources::All => {
                let slot = slot_of(f).expect("every dual node is a source");
                (0..3).map(|l| (layout.d(slot, mesh.aux(l)), 1.0)).collect()
            }
        };
        p.add_constraint(&row, RowSense::Ge, 1.0);
    }
    for x in 0..3 {
        let slot = slot_of(mesh.aux(x)).expect("auxiliary nodes are sources");
        let row: Vec<(usize, f64)> = (0..3)
            .filter(|&y| y != x)
            .map(|y| (layout.d(slot, mesh.aux(y)), 1.0))
            .collect();
        p.add_constraint(&row, RowSense::Ge, 1.0);
    }
    Ok((p, layout))
}

/// Mesh weights whose every 3-way cut costs at least 1, with their volume.
#[derive(Clone, Debug, PartialEq)]
pub struct GapCertificate {
    pub m: usize,
    /// Per primal edge, in [`MeshGraph::edges`] order.
    pub weights: Vec<f64>,
    pub w_total: f64,
    pub gap_lower_bound: f64,
}

impl GapCertificate {
    pub fn mesh(&self) -> Result<MeshGraph<f64>> {
        MeshGraph::new(self.m, self.weights.clone())
    }

    /// Minimum 3-way cut of the weighted mesh.
    pub fn min_cut(&self) -> Result<f64> {
        Ok(planar_dual_min_3cut(&self.mesh()?)?.0)
    }
}

pub fn solve_mesh_lp(m: usize) -> Result<GapCertificate> {
    solve_mesh_lp_with(m, MeshSources::Auxiliary).map(|(c, _)| c)
}

/// Also returns the distance values, indexed like [`MeshLpLayout::d`].
pub fn solve_mesh_lp_with(m: usize, sources: MeshSources) -> Result<(GapCertificate, Vec<f64>)> {
    let (p, layout) = build_mesh_lp(m, sources)?;
    let s = solve_lp(&p, MESH_MAX_ITERATIONS);
    if s.status != LpStatus::Optimal {
        return Err(Error::LpFailed(s.status));
    }
    let weights: Vec<f64> = (0..layout.edges).map(|e| s.values[layout.w(e)].max(0.0)).collect();
    let w_total = s.objective_value;
    let cert = GapCertificate {
        m,
        weights,
        w_total,
        gap_lower_bound: 1.0 / w_total,
    };
    Ok((cert, s.values[layout.edges..].to_vec()))
}
