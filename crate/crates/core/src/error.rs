use thiserror::Error;

/// Errors raised by diagram construction, parsing and the decomposition pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid label {label} on {s}-{t}: labels must be at least 2")]
    InvalidLabel { s: String, t: String, label: u32 },
    #[error("conflicting labels for {s}-{t}")]
    ConflictingLabel { s: String, t: String },
    #[error("generator `{0}` cannot be paired with itself")]
    SelfPair(String),
    #[error("too many generators: {0} (at most {max})", max = crate::genset::MAX_GENERATORS)]
    TooManyGenerators(usize),
    #[error("subset is not contained in the vertex")]
    NotSubset,
    #[error("subset does not separate the vertex")]
    NotSeparating,
    #[error("edge set {edge} does not fit inside a single piece of the split")]
    CompatibilityViolation { edge: String },
    #[error("diagram is not connected as a Coxeter graph")]
    NotCoxeterConnected,
    #[error("orbifold structure check failed: {0}")]
    OrbifoldVerification(String),
    #[error("input has {size} generators, oracle limit is {limit}")]
    OracleLimit { size: usize, limit: usize },
    #[error("diagram is not a disjoint union of simple paths and isolated vertices")]
    NotPathUnion,
    #[error("path union is too small to realize as an orbifold")]
    DegenerateOrbifold,
    #[error("no such vertex in the decomposition")]
    UnknownVertex,
}

pub type Result<T> = std::result::Result<T, Error>;
