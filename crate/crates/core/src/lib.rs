//! LF with refinement types: parsing, sort checking, higher-sort
//! subsorting, and translation into LF with proof irrelevance.

pub mod check;
pub mod diag;
pub mod lexer;
pub mod lf;
pub mod lfi;
pub mod load;
pub mod oracle;
pub mod parser;
pub mod print;
pub mod signature;
pub mod subsort;
pub mod subst;
pub mod syntax;
pub mod translate;

pub use check::{Checker, SortError, SortErrorKind};
pub use diag::{Diagnostic, Severity, Span, Stage};
pub use load::{load_str, Options};
pub use signature::{Context, Decl, Signature};
pub use subst::{eta_expand, erase_type, Subst, SubstFailure};
pub use syntax::*;
