use thiserror::Error;

/// Errors produced by the engine and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad grammar, arity mismatch, missing arguments.
    #[error("usage: {0}")]
    Usage(String),

    /// Arithmetic domain violation, e.g. inverting zero.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported shape {shape}: {reason}")]
    UnsupportedShape { shape: String, reason: String },

    /// A fixed-width integer computation would have wrapped.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// A mathematical invariant failed; this is always an implementation bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed ideal file {path}: {message}")]
    IdealFile { path: String, message: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit code associated with this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_)
            | Error::UnsupportedShape { .. }
            | Error::Io { .. }
            | Error::IdealFile { .. }
            | Error::Domain(_) => 2,
            Error::Overflow(_) | Error::Invariant(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
