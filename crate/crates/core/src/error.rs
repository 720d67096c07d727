use thiserror::Error;

use crate::validate::Diagnostic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("machine is not well formed ({} diagnostics, first: {})", .0.len(), .0.first().map(|d| d.to_string()).unwrap_or_default())]
    InvalidMachine(Vec<Diagnostic>),
    #[error("letter {0:?} is not in the input alphabet")]
    LetterNotInAlphabet(char),
    #[error("exploration exceeded the limit of {limit} configurations")]
    ResourceCap { limit: usize },
    #[error("machine is not deterministic")]
    NotDeterministic,
    #[error("machine is not structurally always-marking")]
    NotAlwaysMarking,
    #[error("machine is not structurally once-marking")]
    NotOnceMarking,
    #[error("machine rewrites tape cells; a write-free two-way machine is required")]
    NotWriteFree,
    #[error("end-marker {0} cannot extend a frozen segment")]
    EndMarkerSymbol(crate::TapeSymbol),
    #[error("input alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<char>, right: Vec<char> },
    #[error("parameter {what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
