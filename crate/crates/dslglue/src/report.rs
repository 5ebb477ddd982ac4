use serde::{Deserialize, Serialize};

/// Outcome of a validation-style operation: `ok` iff no diagnostics were
/// collected. Diagnostics are emitted in a deterministic order so reports
/// compare byte-for-byte across runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationReport {
    pub ok: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl ValidationReport {
    pub fn from_diagnostics(diagnostics: Vec<Diagnostic>) -> Self {
        ValidationReport {
            ok: diagnostics.is_empty(),
            diagnostics,
        }
    }

    pub fn passing() -> Self {
        ValidationReport::from_diagnostics(Vec::new())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            message: message.into(),
        }
    }
}

/// Machine-readable classification of a diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    // DSL well-formedness
    EmptySigilName,
    DuplicateSigil,
    DuplicateSymbol,
    UnknownSigil,
    ZeroArity,
    IllTypedAction,
    // morphism checks
    InvalidSource,
    InvalidTarget,
    MissingTypeMapping,
    StrayTypeMapping,
    UnknownTargetSigil,
    MissingSymbolMapping,
    StraySymbolMapping,
    UnknownTargetSymbol,
    SignatureCommutation,
    CarrierMismatch,
    ActionPreservation,
    // safety obligations
    UnglueableTypes,
    MissingWitness,
    WitnessBaseMismatch,
    SymbolArityMismatch,
    SymbolCarrierMismatch,
    SymbolDisagreement,
    // diagram shape and functoriality
    EmptyShape,
    DuplicateObject,
    UnknownObject,
    DuplicateEdge,
    EdgeEndpointMismatch,
    EdgeMorphism,
    NodeInvalid,
    // cocones and universal properties
    LegCommutation,
    NonCommutingSquare,
    MissingMediator,
    NonUniqueMediator,
}
