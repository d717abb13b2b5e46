//! File formats, the shipped model catalog, and the `orbitquant` command line
//! on top of [`orbitquant_core`].

pub mod catalog;
pub mod cli;
pub mod json;
pub mod spec;

pub use orbitquant_core as core;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] orbitquant_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON in {path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Input(String),
}

pub type AppResult<T> = std::result::Result<T, AppError>;

pub(crate) fn read_file(path: &str) -> AppResult<String> {
    std::fs::read_to_string(path).map_err(|source| AppError::Io { path: path.to_string(), source })
}
