use thiserror::Error;

use crate::datum::Violation;
use crate::GroupFamily;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation failed: {}", format_violations(.0))]
    Validation(Vec<Violation>),
    #[error("block index {index} out of range for r = {r}")]
    IndexOutOfRange { index: usize, r: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("r = {r} exceeds the enumeration cap {cap}")]
    CapExceeded { r: usize, cap: usize },
    #[error("operation requires family {expected}, got {found}")]
    FamilyMismatch {
        expected: &'static str,
        found: GroupFamily,
    },
    #[error("induced representation has no elliptic constituents")]
    NotElliptic,
    #[error("unknown example {0:?}")]
    UnknownExample(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
