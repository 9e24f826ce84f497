use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("quotient ideal contains 1")]
    UnitIdeal,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial syntax error at byte {pos}: {msg}")]
    PolySyntax { pos: usize, msg: String },
    #[error("zero is not allowed here")]
    ZeroElement,
    #[error("map is not well defined")]
    IllDefinedMap,
    #[error("length of a module of positive dimension")]
    LengthOfPositiveDimensional,
    #[error("ring is not declared to be a domain")]
    NotDomain,
    #[error("rank is not constant on components")]
    NonConstantRank,
    #[error("resolution bound too small: need {needed}, have {have}")]
    BoundTooSmall { needed: usize, have: usize },
    #[error("natural map to the double dual is not injective")]
    NotTorsionless,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("invalid matrix factorization: {0}")]
    InvalidMf(String),
    #[error("variable name clash: `{0}`")]
    VariableClash(String),
    #[error("{0}")]
    Other(String),
}
