use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("side length L = {0} must be even and at least 2")]
    InvalidSide(usize),

    #[error("dimension d = {0} must be at least 1")]
    InvalidDimension(usize),

    #[error("torus L^d = {side}^{dim} exceeds the vertex budget of {budget}")]
    TooLarge {
        side: usize,
        dim: usize,
        budget: usize,
    },

    #[error("vertex {vertex} out of range for a graph with {count} vertices")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("direction {direction} out of range for dimension {dim}")]
    InvalidDirection { direction: i32, dim: usize },

    #[error("set sized for {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("activity must be positive")]
    NonPositiveActivity,

    #[error("rho = {0} must lie in [0, 1]")]
    InvalidRho(String),

    #[error("set is not independent: vertices {0} and {1} are adjacent and both occupied")]
    NotIndependent(usize, usize),

    #[error("k must be at least 1")]
    InvalidClusterRadius,

    #[error(
        "enumeration refused: at least {lower_bound} independent sets exceeds the cap of {cap}"
    )]
    EnumerationCap { cap: usize, lower_bound: String },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{0} outside its domain")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
