use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// An invariant that holds mathematically failed at runtime.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("fixture not found: {}", .0.display())]
    FixtureMissing(PathBuf),
    #[error("coordinate cap {cap} is active at {at}")]
    ActiveCap { cap: i64, at: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
