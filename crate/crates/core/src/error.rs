use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the range the operation accepts.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The input cloud or complex violates an invariant the operation relies on.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The component-count plateau required by the k heuristic was not found.
    #[error("no component-count plateau of length {ell} found for k <= {k_max}")]
    NoPlateau { ell: usize, k_max: usize },

    /// The filtered complex fails face-closure or monotonicity.
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    /// The exact Betti oracle refuses complexes beyond its size budget.
    #[error("complex too large for the rank oracle ({0} simplices)")]
    Oversize(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
