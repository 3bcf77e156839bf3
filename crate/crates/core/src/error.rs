use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid continued fraction: {0}")]
    InvalidString(String),

    #[error("invalid expansion input q={q}, q1={q1}: {reason}")]
    InvalidExpansion { q: String, q1: String, reason: &'static str },

    #[error("singular string system (continuant vanishes)")]
    SingularSystem,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("invalid singularity: {0}")]
    InvalidSingularity(String),

    #[error("unknown polyhedral row: {0}")]
    UnknownRow(String),

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("unknown lattice name: {0}")]
    UnknownName(String),

    #[error("degenerate form")]
    Degenerate,

    #[error("lattice is not negative definite")]
    NotNegativeDefinite,

    #[error("discriminant form requested for an odd lattice")]
    OddLattice,

    #[error("discriminant group of order {0} exceeds the enumeration cap")]
    CapExceeded(String),

    #[error("subgroup is not isotropic")]
    NotIsotropic,

    #[error("zero argument has no square class")]
    ZeroArgument,

    #[error("invalid place: {0}")]
    InvalidPlace(String),

    #[error("wrong branch: {0}")]
    WrongBranch(&'static str),

    #[error("wrong signature: expected {expected}, found {found}")]
    WrongSignature { expected: String, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
