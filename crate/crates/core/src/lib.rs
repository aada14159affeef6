//! Geometric relaxation of minimum multiway cut.
//!
//! Nodes of a terminal graph are embedded in the `k`-simplex with terminal
//! `i` at vertex `i`; the volume of the embedding (edge cost times half-L1
//! length, summed) lower-bounds every `k`-way cut. This crate solves that
//! relaxation, rounds embeddings with randomized side-parallel cuts
//! ("sparcs"), and evaluates the cutting density of each rounding scheme,
//! which bounds its approximation ratio.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, threading
//! and the command line live in the `mwc` crate.
//!
//! Module map:
//!
//! * [`geometry`]: simplex points, segments, alignment, aligned decomposition.
//! * [`lp`]: dense two-phase primal simplex solver.
//! * [`graph`]: terminal graphs, labelings, exact min-cut oracles, the
//!   triangular mesh and its planar dual.
//! * [`relaxation`]: the embedding LP, volumes and aligned instances.
//! * [`schemes`]: sparcs, scheme configurations, samplers and rounding.
//! * [`density`]: Monte-Carlo and exact densities, analytic `C_k` family,
//!   density scans.
//! * [`search`]: the discrete-sparc LP and the mesh LP.
//! * [`instances`]: the `G_N` lower-bound family.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod density;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod instances;
pub mod lp;
pub mod relaxation;
pub mod rng;
pub mod scalar;
pub mod schemes;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{Alignment, Segment, SimplexPoint};
pub use rng::RngState;
pub use scalar::{Rational, Scalar};
