//! The two computational searches: the discrete-sparc LP over general `k`
//! and the worst-case graph LP on the `k = 3` mesh.

mod discrete;
mod mesh_lp;

pub use discrete::*;
pub use mesh_lp::*;
