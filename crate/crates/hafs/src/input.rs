//! Loading frameworks and resolving size bounds.

use std::io::Read;
use std::path::Path;

use hafs_core::framework::{parse, ParseError};
use hafs_core::Hafs;
use thiserror::Error;

/// Environment variable overriding every enumeration bound.
pub const MAX_U_VAR: &str = "HAFS_MAX_U";

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}:{0}", origin = .1)]
    Parse(Box<ParseError>, String),
    #[error("`{0}` is neither a readable file nor framework text")]
    NotFound(String),
    #[error("{MAX_U_VAR} must be a non-negative integer, got `{0}`")]
    BadBound(String),
}

/// Reads a framework from a file path, from `stdin` when `source` is `-`,
/// or parses `source` itself when it is not a file and looks like
/// framework text.
pub fn load_framework(source: &str, stdin: &mut dyn Read) -> Result<Hafs, InputError> {
    let (text, origin) = if source == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(|e| InputError::Io {
            path: "<stdin>".into(),
            source: e,
        })?;
        (text, "<stdin>".to_string())
    } else if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source).map_err(|e| InputError::Io {
            path: source.into(),
            source: e,
        })?;
        (text, source.to_string())
    } else if source.contains('(') {
        (source.to_string(), "<inline>".to_string())
    } else {
        return Err(InputError::NotFound(source.into()));
    };
    parse(&text).map_err(|e| InputError::Parse(Box::new(e), origin))
}

/// `default`, unless [`MAX_U_VAR`] holds a value.
pub fn bound(default: usize, env: Option<&str>) -> Result<usize, InputError> {
    match env {
        None => Ok(default),
        Some(raw) => raw.trim().parse().map_err(|_| InputError::BadBound(raw.into())),
    }
}
