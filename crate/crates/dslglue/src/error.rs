use thiserror::Error;

use crate::dsl::{Sigil, SymbolName};
use crate::report::ValidationReport;
use crate::value::BaseType;

/// Crate-wide error type. Operations that report diagnostics instead of
/// failing (`validate_*`, `check_morphism`, `check_safety`, `check_cocone`)
/// return a [`ValidationReport`]; everything else returns `Result<_, Error>`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown sigil {0}")]
    UnknownSigil(Sigil),

    #[error("unknown symbol {0}")]
    UnknownSymbol(SymbolName),

    #[error("unknown builtin {0}")]
    UnknownBuiltin(String),

    #[error("invalid bound: bound must be at least 1")]
    InvalidBound,

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("type mismatch at argument {index}: expected {expected}, got {got}")]
    TypeMismatch {
        index: usize,
        expected: BaseType,
        got: BaseType,
    },

    #[error("ill-typed action: {0}")]
    IllTypedAction(String),

    #[error("graft index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("color mismatch at slot {index}: slot expects {expected}, inner term outputs {got}")]
    ColorMismatch {
        index: usize,
        expected: Sigil,
        got: Sigil,
    },

    #[error("permutation size mismatch: term arity {arity}, permutation length {len}")]
    SizeMismatch { arity: usize, len: usize },

    #[error("invalid permutation {0:?}: images must be a bijection on 0..n")]
    InvalidPermutation(Vec<usize>),

    #[error("{side} morphism failed validation")]
    MorphismInvalid {
        side: String,
        report: ValidationReport,
    },

    #[error("span is malformed: {0}")]
    InvalidSpan(String),

    #[error("diagram failed validation")]
    DiagramInvalid(ValidationReport),

    #[error("safety check failed")]
    SafetyViolation(ValidationReport),

    #[error("inconsistent quotient: {0}")]
    InconsistentQuotient(String),

    #[error("glued action disagreement: {0}")]
    ActionDisagreement(String),

    #[error("term enumeration produced more than {0} terms; lower the depth")]
    TermSpaceExceeded(usize),

    #[error("universal-property search space {candidates} exceeds ceiling {ceiling}")]
    SearchSpaceExceeded { candidates: u128, ceiling: u128 },

    #[error("max_target_sigils {0} exceeds the supported maximum 3")]
    TargetCapExceeded(u64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },

    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

impl Error {
    /// True for failures of the composition itself (safety, quotient, glued
    /// action agreement) as opposed to malformed input.
    pub fn is_report_failure(&self) -> bool {
        matches!(
            self,
            Error::SafetyViolation(_)
                | Error::InconsistentQuotient(_)
                | Error::ActionDisagreement(_)
        )
    }

    /// Stable kebab-case identifier for the error variant, used as the
    /// `error` field of machine-readable failure output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownSigil(_) => "unknown-sigil",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::UnknownBuiltin(_) => "unknown-builtin",
            Error::InvalidBound => "invalid-bound",
            Error::ArityMismatch { .. } => "arity-mismatch",
            Error::TypeMismatch { .. } => "type-mismatch",
            Error::IllTypedAction(_) => "ill-typed-action",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::ColorMismatch { .. } => "color-mismatch",
            Error::SizeMismatch { .. } => "size-mismatch",
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::MorphismInvalid { .. } => "morphism-invalid",
            Error::InvalidSpan(_) => "invalid-span",
            Error::DiagramInvalid(_) => "diagram-invalid",
            Error::SafetyViolation(_) => "safety-violation",
            Error::InconsistentQuotient(_) => "inconsistent-quotient",
            Error::ActionDisagreement(_) => "action-disagreement",
            Error::TermSpaceExceeded(_) => "term-space-exceeded",
            Error::SearchSpaceExceeded { .. } => "search-space-exceeded",
            Error::TargetCapExceeded(_) => "target-cap-exceeded",
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::Format { .. } => "format",
        }
    }
}
