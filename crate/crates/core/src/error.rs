use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for matrix size {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("matrix size {n} is below the minimum {min}")]
    SizeTooSmall { n: usize, min: usize },

    #[error("unknown matrix kind '{0}' (expected one of W, T, H, R, S)")]
    UnknownKind(char),

    #[error("bad matrix index in '{0}': indices are positive integers")]
    BadIndex(String),

    #[error("empty monomial")]
    EmptyMonomial,

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("enumeration needs about {needed:.3e} steps but the work budget is {budget}")]
    BudgetExceeded { needed: f64, budget: u64 },

    #[error("matrix polynomial does not evaluate to a symmetric matrix (relative asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix of order {n} exceeds the eigensolver cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
