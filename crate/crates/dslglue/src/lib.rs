//! Domain-specific languages as colored operads of sets, and their
//! composition by gluing.
//!
//! A [`Dsl`] names a finite universe of sigils, each denoting a base
//! type, and a list of function symbols whose actions are closed terms
//! over a fixed builtin pool. Operad terms over a DSL ([`OperadTerm`])
//! support grafting and input permutation, and [`check_laws`] verifies
//! the operad axioms exhaustively over bounded carriers. Two DSLs glue
//! along a [`Span`] via [`pushout`]; finite diagrams of DSLs glue via
//! [`colimit`]. Both constructions enforce witness-backed safety
//! obligations before merging anything, and both can be checked against
//! the universal property by brute-force cocone enumeration. The
//! [`files`] module defines the JSON formats the `dslglue` CLI speaks.

pub mod action;
pub mod builtins;
pub mod diagram;
pub mod dsl;
pub mod error;
pub mod files;
pub mod glue;
pub mod laws;
pub mod morphism;
pub mod operad;
mod quotient;
pub mod report;
pub mod universal;
pub mod value;

pub use action::TermExpr;
pub use builtins::Builtin;
pub use diagram::{check_cocone, colimit, validate_diagram, ColimitResult, Diagram, Shape};
pub use dsl::{validate_dsl, Dsl, FunctionSymbol, Sigil, Signature, SymbolName, TypeUniverse};
pub use error::Error;
pub use files::{
    load_diagram, load_dsl, load_glue, load_report, load_term, CompositionReport, LoadedDiagram,
    LoadedGlue,
};
pub use glue::{check_safety, pushout, GlueWitness, PushoutResult, Span};
pub use laws::{check_laws, enumerate_terms, LawReport};
pub use morphism::{check_morphism, DslMorphism};
pub use operad::{
    eval_term, graft, permute_term, profile_of, unit_term, OperadTerm, Permutation, Profile,
};
pub use report::{Diagnostic, DiagnosticKind, ValidationReport};
pub use universal::{verify_colimit_universal, verify_universal_property, UniversalCheck};
pub use value::{enumerate_carrier, BaseType, Value};
