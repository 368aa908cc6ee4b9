use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped so that callers (notably the CLI) can map them to a
/// small set of exit statuses via [`Error::kind`].
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A numeric precondition failed (non-positive radius, empty sample, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("file not found: {}", .0.display())]
    MissingFile(PathBuf),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unparsable cell at row {row}, column {column}: {value:?}")]
    UnparsableCell {
        row: usize,
        column: usize,
        value: String,
    },

    #[error("requested subsample of {requested} rows but the file has {available}")]
    SubsampleTooLarge { requested: usize, available: usize },

    #[error("malformed input: {0}")]
    Format(String),

    /// The Rips complex would exceed the configured simplex cap.
    #[error(
        "simplex count exceeds the cap of {cap} simplices (max_scale too large for this cloud)"
    )]
    SimplexCap { cap: usize },

    /// An error raised while processing one element of a batch.
    #[error("item {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// An error raised in a named pipeline stage.
    #[error("stage `{stage}`: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

/// Coarse error classification, used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad or missing input data.
    Data,
    /// Numeric preconditions or resource limits.
    Numeric,
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn at_index(index: usize, source: Error) -> Self {
        Error::AtIndex {
            index,
            source: Box::new(source),
        }
    }

    pub fn in_stage(stage: &'static str, source: Error) -> Self {
        Error::Stage {
            stage,
            source: Box::new(source),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::MissingFile(path)
        } else {
            Error::Io { path, source }
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_) | Error::SimplexCap { .. } => ErrorKind::Numeric,
            Error::MissingFile(_)
            | Error::Io { .. }
            | Error::UnparsableCell { .. }
            | Error::SubsampleTooLarge { .. }
            | Error::Format(_) => ErrorKind::Data,
            Error::AtIndex { source, .. } | Error::Stage { source, .. } => source.kind(),
        }
    }
}
