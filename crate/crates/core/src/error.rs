use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Root finding did not converge; `best` holds the last iterate.
    #[error("numeric failure: {message}")]
    NumericFailure { message: String, best: Vec<Complex64> },

    #[error("polynomial has a root {root} with modulus {modulus} inside the unit disk")]
    NotInClass { root: Complex64, modulus: f64 },

    #[error("polynomial vanishes or changes sign near x = {x} in (-1, 1)")]
    NotInLorentzClass { x: f64 },

    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
