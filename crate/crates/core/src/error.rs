use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,
    #[error("coxeter matrix is not integral (form is not unimodular)")]
    NotIntegral,
    #[error("determinant {0} is not a unit")]
    NotUnimodular(String),
    #[error("diagonal entry {index} is {value}, expected 2")]
    DiagonalNotTwo { index: usize, value: String },
    #[error("zero pattern is not symmetric at ({0}, {1})")]
    AsymmetricZeroPattern(usize, usize),
    #[error("primitive graph is not bipartite")]
    NotBipartite,
    #[error("index {index} out of range for size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    ConstantPolynomial,
    #[error("weight list is empty")]
    EmptyWeights,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("weight {0} is smaller than 2")]
    InvalidWeight(i64),
    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("enumeration of {requested} vectors exceeds the cap of {cap}")]
    EnumerationCap { requested: u128, cap: u128 },
    #[error("size {requested} exceeds the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("oriented cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
