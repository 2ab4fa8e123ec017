use std::fs;
use std::path::{Path, PathBuf};

use antlab_core::{Pattern, PatternError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Pattern { path: PathBuf, source: PatternError },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

/// Reads a pattern file and checks its states against the declared rule word.
pub fn load_pattern(path: impl AsRef<Path>) -> Result<Pattern, SeedError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| SeedError::Io { path: path.into(), source })?;
    parse_checked(&text).map_err(|source| SeedError::Pattern { path: path.into(), source })
}

pub fn parse_checked(text: &str) -> Result<Pattern, PatternError> {
    let p = Pattern::parse(text)?;
    p.check_states(&p.word)?;
    Ok(p)
}

pub fn save_pattern(pattern: &Pattern, path: impl AsRef<Path>) -> Result<(), SeedError> {
    let path = path.as_ref();
    fs::write(path, pattern.to_text()).map_err(|source| SeedError::Io { path: path.into(), source })
}
