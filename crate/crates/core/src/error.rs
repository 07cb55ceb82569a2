use thiserror::Error;

use crate::algebra::BasisIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched W3 structure parameters: {0} vs {1}")]
    MismatchedParameter(String, String),
    #[error(
        "no reachability certificate from {source_index} to {target} within the search window"
    )]
    NoCertificate {
        source_index: BasisIndex,
        target: BasisIndex,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid literal {0:?}")]
    InvalidLiteral(String),
    #[error("json: {0}")]
    Json(String),
    #[error("syntax error at {line}:{column}: found {found}, expected one of {}", expected.join(", "))]
    Syntax {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("type error: {0}")]
    Type(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
