use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid cost for node `{node}`: {message}")]
    Cost { node: String, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("node {node} is not part of the arborescence rooted at {root}")]
    NotInTree { node: u32, root: u32 },

    #[error("MIIA cache was built for graph {expected:#018x}, got {actual:#018x}")]
    StaleCache { expected: u64, actual: u64 },

    #[error("exact Shapley refused: {n} players exceeds the limit of {limit}")]
    TooManyPlayers { n: usize, limit: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
