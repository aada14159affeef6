use alloc::string::String;

use thiserror::Error;

use crate::lp::LpStatus;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a simplex point needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("coordinate {index} is negative ({value})")]
    NegativeCoordinate { index: usize, value: f64 },
    #[error("coordinates sum to {sum}, expected 1")]
    SumNotOne { sum: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("segment has zero length")]
    ZeroLengthSegment,
    #[error("segment is not aligned with a simplex edge")]
    UnalignedSegment,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid labeling: node {node} has label {found}, expected {expected}")]
    InvalidLabeling {
        node: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("negative edge weight on edge {0}")]
    NegativeWeight(usize),
    #[error("embedding has no point for node {0}")]
    MissingPoint(usize),
    #[error("linear program did not reach an optimum: {0:?}")]
    LpFailed(LpStatus),
    #[error("invalid scheme configuration: {0}")]
    InvalidConfig(String),
    #[error("evaluation point sits on a breakpoint (coordinate {coord} = {value})")]
    BreakpointAtEvaluationPoint { coord: usize, value: f64 },
    #[error("segment straddles the corner threshold")]
    StraddlesCorner,
    #[error("argument outside the function domain: {0}")]
    DomainError(String),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}
