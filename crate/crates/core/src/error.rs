use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{nu} is not a root of X^3 = 2 (mod {m})")]
    NotARoot { m: u64, nu: u64 },

    #[error("lattice is not an ideal of Z[2^(1/3)]: {0}")]
    NotAnIdeal(String),

    #[error("matrix is not in Hermite normal form: {0}")]
    NotHermite(String),

    #[error("generator does not span a primitive ideal (cofactor gcd = {0})")]
    NotPrimitive(i128),

    #[error("norm must be positive, got {0}")]
    NonPositiveNorm(i128),

    #[error("element has norm zero")]
    ZeroNorm,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i128),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Argument,
    Domain,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidArgument(_) | Error::NotHermite(_) | Error::Degenerate(_) => {
                ErrorKind::Argument
            }
            Error::NotARoot { .. }
            | Error::NotAnIdeal(_)
            | Error::NotPrimitive(_)
            | Error::NonPositiveNorm(_)
            | Error::ZeroNorm
            | Error::NotUnimodular(_)
            | Error::Overflow(_) => ErrorKind::Domain,
            Error::Internal(_) => ErrorKind::Internal,
        }
    }
}
