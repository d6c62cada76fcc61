use std::fmt;
use std::path::PathBuf;

use classinv_core::Error;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PRECISION: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => exit::USAGE,
            Failure::Io { .. } => exit::IO,
            Failure::Core(e) if e.is_precision() => exit::PRECISION,
            Failure::Core(
                Error::Domain(_)
                | Error::BranchDomain(_)
                | Error::Overflow(_)
                | Error::Divergence(_)
                | Error::Syntax { .. }
                | Error::Corpus { .. }
                | Error::Config(_),
            ) => exit::USAGE,
            Failure::Core(_) => exit::VERIFICATION,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Failure::Io {
            path: path.into(),
            source,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}
