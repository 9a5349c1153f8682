//! Source positions and user-facing diagnostics.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(start: Pos, end: Pos) -> Span {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

/// Which pipeline stage rejected the input; the CLI maps this to exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Parse,
    Check,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub stage: Stage,
    pub severity: Severity,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn parse(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { stage: Stage::Parse, severity: Severity::Error, span, message: message.into() }
    }

    pub fn check(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { stage: Stage::Check, severity: Severity::Error, span, message: message.into() }
    }

    pub fn verify(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic { stage: Stage::Verify, severity: Severity::Error, span, message: message.into() }
    }

    /// `file:line:col: severity: message`
    pub fn render(&self, file: &str) -> String {
        format!("{}:{}:{}: {}: {}", file, self.span.start.line, self.span.start.col, self.severity, self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.span.start.line, self.span.start.col, self.severity, self.message)
    }
}

impl std::error::Error for Diagnostic {}
