use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("composition of consecutive differentials is not zero ({0})")]
    CompositionNotZero(String),

    #[error("map does not induce a well-defined map on cohomology: {0}")]
    NotWellDefined(String),

    #[error("not an O-operator: {0}")]
    NotAnOOperator(String),

    #[error("not a morphism: {0}")]
    NotAMorphism(String),

    #[error("not a bimodule map: {0}")]
    NotAModuleMap(String),

    #[error("comparison map is only defined in positive degree")]
    DegreeZero,

    #[error("identification of bang constructions failed: {0}")]
    IdentificationFailed(String),

    #[error("element is not skew-symmetric: {0}")]
    NotSkew(String),

    #[error("not a weak morphism: {0}")]
    NotWeakMorphism(String),

    #[error("not an r-matrix: {0}")]
    NotRMatrix(String),

    #[error("cochain space of dimension {dim} exceeds size limit {limit}")]
    SizeLimitExceeded { dim: usize, limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("unresolved reference to {kind} `{name}`")]
    UnresolvedReference { kind: &'static str, name: String },

    #[error("invalid workspace: {0}")]
    InvalidWorkspace(String),

    #[error("unknown command `{0}`")]
    UnknownCommand(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
