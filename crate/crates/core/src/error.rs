use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what}: {requested} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        requested: String,
        budget: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// An identity that holds for every input failed; always a bug.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    #[error("automaton has no ON cells")]
    EmptyState,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
