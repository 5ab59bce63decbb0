use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed json in {path} line {line}: {source}")]
    Json {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error("stage `{stage}` not found for media house `{house}` (run `{producer}` first)")]
    StageNotFound {
        stage: String,
        house: String,
        producer: String,
    },

    #[error("stage file {0} is locked by another writer")]
    Locked(PathBuf),

    #[error("invalid media house name `{0}`")]
    InvalidHouse(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("document `{doc_id}`: {reason}")]
    Document { doc_id: String, reason: String },

    #[error(transparent)]
    Gerund(#[from] crate::gerund::GerundError),

    #[error(transparent)]
    Split(#[from] crate::demo::SplitError),

    #[error(transparent)]
    Embed(#[from] crate::eval::EmbedError),

    #[error("adapter step `{step}` failed: {reason}")]
    Adapter { step: String, reason: String },

    #[error("{0}")]
    Data(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Exit code used by the command-line front end: 1 for usage and
    /// configuration problems, 2 for everything that went wrong with data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidHouse(_) => 1,
            _ => 2,
        }
    }
}
