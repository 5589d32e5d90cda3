use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("mismatched spaces: {0}")]
    Mismatch(String),

    #[error("empty code: {0}")]
    EmptyCode(String),

    #[error("minimum distance is undefined for a code with {0} word(s)")]
    UndefinedDistance(u64),

    #[error("operation requires an explicit code, got an oracle code ({0})")]
    EnumerationRequired(String),

    #[error("space of {needed} vertices exceeds the vertex budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("multiset given where a set is required: word {0} has multiplicity > 1")]
    NotASet(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: word {word} already belongs to class {class}")]
    Overlap {
        line: usize,
        word: String,
        class: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
