use std::fmt;

use thiserror::Error;

/// Which syntactic class a name was looked up in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Action,
    Observable,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolKind::Action => f.write_str("action"),
            SymbolKind::Observable => f.write_str("observable"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown {kind} `{name}`")]
    UnknownSymbol { name: String, kind: SymbolKind },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("signature has {observables} observables; at most {max} are supported")]
    SignatureTooLarge { observables: usize, max: usize },

    #[error("enumeration of {requested} words exceeds the budget of {cap}")]
    BudgetExceeded { requested: u128, cap: u64 },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is not square: {rows} rows over an index of size {index}")]
    NotSquare { rows: usize, index: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
