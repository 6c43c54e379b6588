//! Error types shared across the crate.

use thiserror::Error;

/// A domain rule was violated while constructing or checking a value.
///
/// `field` names the offending input so callers can point at it directly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field}: {message}")]
pub struct ValidationError {
    pub field: String,
    pub message: String,
}

impl ValidationError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// A positioned error from parsing text input (`.fps` files or CSV).
///
/// `line` and `column` are 1-based and point into the source text;
/// `offending_text` carries the token or line that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub offending_text: String,
}

impl ParseError {
    pub fn new(
        line: usize,
        column: usize,
        message: impl Into<String>,
        offending_text: impl Into<String>,
    ) -> Self {
        Self {
            line,
            column,
            message: message.into(),
            offending_text: offending_text.into(),
        }
    }
}
