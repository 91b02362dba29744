use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("overflow evaluating {0}; request the exponentially scaled form")]
    Overflow(String),

    #[error("pole at z = 0 for {0}")]
    Pole(String),

    #[error("eigenvalue formula degenerates at l = {l}: denominator {denominator:e}")]
    DegenerateFormula { l: usize, denominator: f64 },

    #[error("integrand diverges near r = {at}")]
    Divergent { at: f64 },

    #[error("quadrature estimate {estimate:e} above tolerance {tol:e}; refine the grid")]
    RefineNeeded { tol: f64, estimate: f64 },

    #[error("lost the eigenvalue branch between eps = {from} and eps = {to}")]
    BranchLost { from: f64, to: f64 },

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("degenerate mode: {0}")]
    DegenerateMode(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Overflow(_) => "overflow",
            Error::Pole(_) => "pole",
            Error::DegenerateFormula { .. } => "degenerate-formula",
            Error::Divergent { .. } => "divergent",
            Error::RefineNeeded { .. } => "refine-needed",
            Error::BranchLost { .. } => "branch-lost",
            Error::InvalidPolygon(_) => "invalid-polygon",
            Error::DegenerateMode(_) => "degenerate-mode",
            Error::NoConvergence(_) => "no-convergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
