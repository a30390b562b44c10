use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d is nonzero starting in degree {0}")]
    NotAComplex(i32),
    #[error("ambient dimensions differ: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("{what} = {value} exceeds the cap {cap}")]
    Cap { what: &'static str, value: usize, cap: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
