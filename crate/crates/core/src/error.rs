use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree {0} exceeds the supported maximum of {max}", max = crate::perm::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("group order {order} exceeds the enumeration cap {cap}")]
    OrderCapExceeded { order: String, cap: u64 },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("field of size {0} is larger than 2^16")]
    FieldTooLarge(u64),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("form is degenerate: {0}")]
    DegenerateForm(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("cannot parse group spec `{input}`: {reason}")]
    SpecSyntax { input: String, reason: String },

    #[error("i/o error reading {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("element is not a member of the group")]
    NotMember,

    #[error("class search incomplete: found {found} of {order} elements")]
    ClassSearchIncomplete { found: String, order: String },

    #[error("no Hall-Thompson triple found within {0} samples")]
    WitnessSearchExhausted(u64),

    #[error("inconclusive at cap n = {n_max} for class with representative order {order}")]
    InconclusiveAtCap { n_max: usize, order: u64 },

    #[error("bad root system type: {0}")]
    BadType(String),

    #[error("root check failed: {0}")]
    CheckFailed(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
