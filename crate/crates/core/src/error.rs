use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("non-prime modulus {0}")]
    NonPrimeModulus(u64),

    #[error("word index not above base: {0}")]
    WordIndexNotAboveBase(String),

    #[error("generator index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("rank {0} exceeds the supported maximum of {max}", max = crate::pc::MAX_RANK)]
    RankTooLarge(usize),

    #[error("inconsistent presentation: {0} failing relation(s)")]
    Inconsistent(usize),

    #[error("enumeration budget exceeded: need {needed} elements, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown target '{0}'")]
    UnknownTarget(String),

    #[error("catalog entry {id}: expected {property} = {expected}, computed {actual}")]
    ExpectationMismatch {
        id: String,
        property: String,
        expected: String,
        actual: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
