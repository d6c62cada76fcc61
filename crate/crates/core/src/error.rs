use alloc::string::String;

/// Every failure the numeric stack can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("requested {requested} digits but only {available} are carried")]
    PrecisionExceeded { requested: u32, available: u32 },
    #[error("precision fault: {0}")]
    PrecisionFault(String),
    #[error("series or product diverges: {0}")]
    Divergence(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("branch domain error: {0}")]
    BranchDomain(String),
    #[error("formula inconsistency: {0}")]
    FormulaInconsistency(String),
    #[error("root selection failed: {0}")]
    RootSelection(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("insufficient precision: {digits} digits given, {required} required")]
    InsufficientPrecision { digits: u32, required: u32 },
    #[error("no integer relation found: {0}")]
    NoRelation(String),
    #[error("cancelled")]
    Cancelled,
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by running out of working precision.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::PrecisionExceeded { .. }
                | Error::PrecisionFault(_)
                | Error::InsufficientPrecision { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
