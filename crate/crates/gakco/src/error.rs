use std::path::PathBuf;

/// Errors surfaced by corpus loading, parameter validation, and kernel
/// computation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A 64-bit counter would wrap. Counts are never allowed to wrap
    /// silently.
    #[error("count overflow while {0}")]
    Overflow(&'static str),

    /// An internal identity that must hold by construction was violated;
    /// this always indicates a counting bug upstream, never bad input.
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),

    #[error("gapped k-mer feature space too large ({instances} instances > limit {limit}); use a smaller g")]
    FeatureLimit { instances: u64, limit: u64 },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
