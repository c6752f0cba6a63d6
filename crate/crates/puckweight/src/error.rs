use std::fmt;
use std::path::PathBuf;

use puckweight_core::apm::ApmError;
use puckweight_core::glm::GlmError;
use puckweight_core::ingest::IngestError;
use puckweight_core::reliability::ReliabilityError;
use puckweight_core::synth::SynthError;

/// Errors surfaced by the command line, each with its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: expected first line `{expected}`, found `{found}`")]
    SchemaVersion {
        path: String,
        expected: String,
        found: String,
    },
    #[error("{path}:{line}: {field}: {message}")]
    Parse {
        path: String,
        line: u64,
        field: String,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Model(#[from] GlmError),
    #[error(transparent)]
    Reliability(#[from] ReliabilityError),
    #[error(transparent)]
    Apm(#[from] ApmError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

/// Stable identifiers and exit codes for [`Error`] kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    MissingInput,
    SchemaVersion,
    Parse,
    Config,
    InvalidData,
    Analysis,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::MissingInput => 3,
            ErrorKind::SchemaVersion => 4,
            ErrorKind::Parse => 5,
            ErrorKind::Config => 6,
            ErrorKind::InvalidData => 7,
            ErrorKind::Analysis => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ErrorKind::Usage => "usage",
            ErrorKind::MissingInput => "missing-input",
            ErrorKind::SchemaVersion => "schema-version",
            ErrorKind::Parse => "parse",
            ErrorKind::Config => "config",
            ErrorKind::InvalidData => "invalid-data",
            ErrorKind::Analysis => "analysis",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Io { .. } => ErrorKind::MissingInput,
            Error::SchemaVersion { .. } => ErrorKind::SchemaVersion,
            Error::Parse { .. } => ErrorKind::Parse,
            Error::Usage(_) => ErrorKind::Usage,
            Error::Config(_) => ErrorKind::Config,
            Error::Ingest(_) => ErrorKind::InvalidData,
            Error::Model(_) | Error::Reliability(_) | Error::Apm(_) => ErrorKind::Analysis,
            Error::Synth(_) => ErrorKind::Config,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// `error[kind]: message` on one line.
    pub fn one_line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.kind(), msg)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
