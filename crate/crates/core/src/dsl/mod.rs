//! The `.pfm` text format.
//!
//! ```text
//! pfm-version 1
//! model "Smart campus"
//! facility erp_server "ERP host"
//! diagram P8 "Access for people" {
//!   machine S "System"
//!   domain ERP "ERP" kind C facilities [erp_server]
//!   requirement R8 "Access for people" constrains [ERP] refers []
//!   interface S -- ERP phenomena ["query"]
//! }
//! correlation P8 P9 low
//! hint merge P8 P9 accepted "same gate"
//! similarity P8 P9 3
//! similarity-all 2
//! ```
//!
//! Statements are line oriented; `#` starts a comment. Parsing never panics:
//! every problem comes back as a [`ParseDiagnostic`] with a 1-based span.

mod lexer;
mod parser;
mod serialize;

use std::fmt;

use crate::model::Severity;

pub use parser::{parse, parse_with_diagnostics, ParseOutput};
pub use serialize::serialize;

/// Version accepted in the optional `pfm-version` header.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        Self {
            line: line.max(1),
            column: column.max(1),
            length,
        }
    }

    /// Span from the start of `self` to the end of `other`, when both sit on one line.
    pub(crate) fn to(self, other: SourceSpan) -> SourceSpan {
        if other.line == self.line && other.column >= self.column {
            SourceSpan::new(
                self.line,
                self.column,
                other.column + other.length - self.column,
            )
        } else {
            self
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub severity: Severity,
    pub message: String,
    /// Description of what the parser would have accepted here.
    pub expected: Option<String>,
}

impl ParseDiagnostic {
    pub(crate) fn error(span: SourceSpan, message: impl Into<String>) -> Self {
        Self {
            span,
            severity: Severity::Error,
            message: message.into(),
            expected: None,
        }
    }

    pub(crate) fn expected(
        span: SourceSpan,
        message: impl Into<String>,
        expected: impl Into<String>,
    ) -> Self {
        Self {
            expected: Some(expected.into()),
            ..Self::error(span, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.severity, self.message)?;
        if let Some(exp) = &self.expected {
            write!(f, " (expected {exp})")?;
        }
        Ok(())
    }
}
