use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The retained Fock levels do not hold enough of the state.
    #[error("truncation inadequate: {what} has tail mass {tail:.3e} (limit {limit:.1e}) at dim {dim}")]
    Truncation {
        what: &'static str,
        tail: f64,
        limit: f64,
        dim: usize,
    },

    #[error("trace {0:.3e} is too small to normalize")]
    ZeroTrace(f64),

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("Fock level {n} lies outside a space of dimension {dim}")]
    IndexOutOfSpace { n: usize, dim: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("no closed-form Wigner function for {0}")]
    UnsupportedClosedForm(String),

    #[error("eigendecomposition did not converge")]
    Eigen,

    #[error("two-mode problem of dimension {dim} exceeds the limit of {limit}")]
    TooLarge { dim: usize, limit: usize },
}

impl Error {
    /// Numerical failures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Truncation { .. } | Error::Eigen | Error::TooLarge { .. } | Error::ZeroTrace(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
