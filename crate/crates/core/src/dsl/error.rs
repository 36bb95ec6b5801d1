use std::fmt;

use thiserror::Error;

use super::ast::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    OutOfRange,
    UnknownMode,
    UnknownHomodyne,
    Duplicate,
    MissingModes,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {}, column {}: {message}{}", span.line, span.column, ExpectedList(expected))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
    pub message: String,
    /// Tokens that would have been accepted here.
    pub expected: Vec<String>,
    /// Offending numeric value for range errors.
    pub value: Option<f64>,
}

struct ExpectedList<'a>(&'a [String]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return Ok(());
        }
        write!(f, " (expected {})", self.0.join(" | "))
    }
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, span: Span, message: impl Into<String>) -> Self {
        Self { kind, span, message: message.into(), expected: Vec::new(), value: None }
    }

    pub(crate) fn expected(span: Span, expected: &[&str], found: &str) -> Self {
        let found = if found.is_empty() { "end of line".to_owned() } else { format!("'{found}'") };
        Self {
            expected: expected.iter().map(|s| (*s).to_owned()).collect(),
            ..Self::new(ParseErrorKind::UnexpectedToken, span, format!("unexpected {found}"))
        }
    }

    pub(crate) fn out_of_range(span: Span, key: &str, range: &str, value: f64) -> Self {
        Self {
            value: Some(value),
            ..Self::new(ParseErrorKind::OutOfRange, span, format!("{key} out of {range}: {value}"))
        }
    }
}
