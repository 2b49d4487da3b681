use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not rational")]
    NotRational,

    #[error("galois exponent {k} is not coprime to conductor {conductor}")]
    NonCoprimeExponent { k: i64, conductor: u32 },

    #[error("conductor {to} is not a multiple of {from}")]
    NotAMultiple { from: u32, to: u32 },

    #[error("conductor must be positive")]
    ZeroConductor,

    #[error("invalid group scheme spec: {0}")]
    InvalidSpec(String),

    #[error("element order exceeds bound {0}")]
    OrderBoundExceeded(u64),

    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("character table computation failed: {0}")]
    CharacterTable(String),

    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),

    #[error("fusion datum violates invariants: {0:?}")]
    FusionViolations(Vec<String>),

    #[error("module L({0}) is projective (Steinberg); highest weight must be at most p-2")]
    ProjectiveWeight(i64),

    #[error("element is central and fixes every point of the projective line")]
    CentralElement,

    #[error("action is not faithful modulo the center")]
    NotFaithful,

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("seed simple {0} is out of range")]
    BadSeed(usize),

    #[error("malformed input: {0}")]
    Parse(String),
}
