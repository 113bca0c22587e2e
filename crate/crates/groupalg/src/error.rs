use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for {what} of size {len}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("value at {0} is not unimodular")]
    NotUnimodular(String),
    #[error("real cocycle value at {0} is not +1 or -1")]
    NotReal(String),
    #[error("elements belong to different groupoids")]
    GroupoidMismatch,
    #[error("operation requires an untwisted algebra")]
    Twisted,
    #[error("unsupported p = {0}")]
    UnsupportedP(String),
    #[error("n must be positive")]
    ZeroN,
    #[error("algebra is not unital")]
    NotUnital,
    #[error("oracle requires the complex field")]
    RealField,
    #[error("subspace is not abelian")]
    NotAbelian,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("graph has a cycle")]
    Cyclic,
    #[error("graph has a source vertex `{0}`")]
    HasSource(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("product of states `{0}` and `{1}` is not tabulated")]
    BoundExceeded(String, String),
    #[error("not a bisection")]
    NotBisection,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
