//! File formats: line-based graphs, embeddings and labelings, JSON scheme
//! configs, distributions and certificates, CSV density reports, and a
//! reader for the LP text the core crate emits.

pub mod csv;
pub mod json;
pub mod lp;
pub mod text;

pub use self::csv::{parse_density_csv, write_density_csv, DensityRow};
pub use self::json::{
    parse_certificate, parse_distribution, parse_scheme, write_certificate, write_distribution, write_scheme,
};
pub use self::lp::parse_cplex_lp;
pub use self::text::{
    parse_embedding, parse_graph, parse_labeling, parse_rational, write_embedding, write_graph, write_labeling, Token,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] mwc_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}
