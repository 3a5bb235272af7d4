use thiserror::Error;

/// Errors raised by the algebra kernel, the term language and the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {entry} at coordinate {coord} is outside base of size {base}")]
    EntryOutOfRange { coord: usize, entry: usize, base: usize },

    #[error("rank {rank} is outside a space of {size} sequences")]
    RankOutOfRange { rank: u64, size: u64 },

    #[error("space of dimension {n} over base {base} does not fit in 64 bits")]
    SpaceOverflow { n: usize, base: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("invalid transposition [{i},{j}] in dimension {n}")]
    InvalidTransposition { n: usize, i: usize, j: usize },

    #[error("coordinate {i} out of range for dimension {n}")]
    CoordinateOutOfRange { n: usize, i: usize },

    #[error("carrier mismatch: operands belong to different carriers")]
    CarrierMismatch,

    #[error("carrier would have {requested} members, cap is {cap}")]
    CarrierTooLarge { requested: u64, cap: u64 },

    #[error("subalgebra generation exceeded the cap of {cap} elements")]
    SubalgebraTooLarge { cap: usize },

    #[error("sequence {0:?} is not a member of the carrier")]
    NotAMember(Vec<usize>),

    #[error("carrier is not a sub-carrier of the ambient carrier")]
    NotASubCarrier,

    #[error("carrier is not permutable")]
    NotPermutable,

    #[error("factor count mismatch: expected {expected}, found {found}")]
    FactorCountMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("enumeration of {requested} cases exceeds budget {budget}")]
    BudgetExceeded { requested: String, budget: u64 },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("variable `{0}` is not assigned")]
    Unassigned(String),

    #[error("dimension must be at least {min}, got {n}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("unknown search strategy `{0}`")]
    UnknownStrategy(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
