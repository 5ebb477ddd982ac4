//! DSL definitions: a universe of sigils bound to base-type carriers plus
//! function symbols whose signatures are spelled in sigils and whose bodies
//! are [`TermExpr`] actions over the builtin catalog.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::TermExpr;
use crate::error::Error;
use crate::report::{Diagnostic, DiagnosticKind, ValidationReport};
use crate::value::{BaseType, Value};

/// Name of a type in a DSL universe.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sigil(pub String);

impl Sigil {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Sigil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Sigil {
    fn from(s: &str) -> Sigil {
        Sigil(s.to_owned())
    }
}

impl From<String> for Sigil {
    fn from(s: String) -> Sigil {
        Sigil(s)
    }
}

/// Name of a function symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymbolName(pub String);

impl SymbolName {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SymbolName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SymbolName {
    fn from(s: &str) -> SymbolName {
        SymbolName(s.to_owned())
    }
}

impl From<String> for SymbolName {
    fn from(s: String) -> SymbolName {
        SymbolName(s)
    }
}

/// One entry of a type universe: a sigil and the base-type carrier it
/// denotes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigilBinding {
    pub sigil: Sigil,
    pub base: BaseType,
}

/// Ordered list of sigil bindings. Order is preserved from the source file
/// and is significant for report determinism, not for meaning.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeUniverse(pub Vec<SigilBinding>);

impl TypeUniverse {
    pub fn new(bindings: Vec<SigilBinding>) -> TypeUniverse {
        TypeUniverse(bindings)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SigilBinding> {
        self.0.iter()
    }

    pub fn sigils(&self) -> impl Iterator<Item = &Sigil> {
        self.0.iter().map(|b| &b.sigil)
    }

    /// Base type denoted by `sigil`, or `None` when the sigil is unbound.
    pub fn denote(&self, sigil: &str) -> Option<BaseType> {
        self.0
            .iter()
            .find(|b| b.sigil.as_str() == sigil)
            .map(|b| b.base)
    }

    pub fn contains(&self, sigil: &str) -> bool {
        self.denote(sigil).is_some()
    }
}

/// Input and output sigils of a function symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub domain: Vec<Sigil>,
    pub codomain: Sigil,
}

impl Signature {
    pub fn arity(&self) -> usize {
        self.domain.len()
    }
}

/// A named operation of a DSL: a signature over the universe plus an
/// executable action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "FunctionSymbolRepr", into = "FunctionSymbolRepr")]
pub struct FunctionSymbol {
    pub name: SymbolName,
    pub signature: Signature,
    pub action: TermExpr,
}

impl FunctionSymbol {
    pub fn new(
        name: impl Into<SymbolName>,
        domain: Vec<Sigil>,
        codomain: Sigil,
        action: TermExpr,
    ) -> FunctionSymbol {
        FunctionSymbol {
            name: name.into(),
            signature: Signature { domain, codomain },
            action,
        }
    }

    pub fn arity(&self) -> usize {
        self.signature.arity()
    }
}

// Serialized form keeps domain and codomain as sibling fields of name and
// action rather than nesting a signature object.
#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionSymbolRepr {
    name: SymbolName,
    domain: Vec<Sigil>,
    codomain: Sigil,
    action: TermExpr,
}

impl From<FunctionSymbolRepr> for FunctionSymbol {
    fn from(repr: FunctionSymbolRepr) -> FunctionSymbol {
        FunctionSymbol {
            name: repr.name,
            signature: Signature {
                domain: repr.domain,
                codomain: repr.codomain,
            },
            action: repr.action,
        }
    }
}

impl From<FunctionSymbol> for FunctionSymbolRepr {
    fn from(symbol: FunctionSymbol) -> FunctionSymbolRepr {
        FunctionSymbolRepr {
            name: symbol.name,
            domain: symbol.signature.domain,
            codomain: symbol.signature.codomain,
            action: symbol.action,
        }
    }
}

/// A domain-specific language: a named universe of typed sigils and a list
/// of function symbols over it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dsl {
    pub name: String,
    #[serde(rename = "types")]
    pub universe: TypeUniverse,
    #[serde(rename = "functions")]
    pub symbols: Vec<FunctionSymbol>,
}

impl Dsl {
    pub fn symbol(&self, name: &str) -> Option<&FunctionSymbol> {
        self.symbols.iter().find(|s| s.name.as_str() == name)
    }

    /// Base type denoted by `sigil`, failing on unbound sigils.
    pub fn denote_type(&self, sigil: &Sigil) -> Result<BaseType, Error> {
        self.universe
            .denote(sigil.as_str())
            .ok_or_else(|| Error::UnknownSigil(sigil.clone()))
    }

    /// Base types denoted by a signature's domain, in order.
    pub fn denote_domain(&self, signature: &Signature) -> Result<Vec<BaseType>, Error> {
        signature
            .domain
            .iter()
            .map(|s| self.denote_type(s))
            .collect()
    }

    /// Run the named symbol's action on `args`, checking arity and carriers
    /// against the denoted signature on the way in and out.
    pub fn eval_action(&self, symbol: &str, args: &[Value]) -> Result<Value, Error> {
        let symbol = self
            .symbol(symbol)
            .ok_or_else(|| Error::UnknownSymbol(SymbolName::from(symbol)))?;
        let domain = self.denote_domain(&symbol.signature)?;
        let codomain = self.denote_type(&symbol.signature.codomain)?;
        if args.len() != domain.len() {
            return Err(Error::ArityMismatch {
                expected: domain.len(),
                got: args.len(),
            });
        }
        for (index, (arg, want)) in args.iter().zip(&domain).enumerate() {
            if arg.base_type() != *want {
                return Err(Error::TypeMismatch {
                    index,
                    expected: *want,
                    got: arg.base_type(),
                });
            }
        }
        let result = symbol.action.eval(args)?;
        if result.base_type() != codomain {
            return Err(Error::IllTypedAction(format!(
                "action of {} produced a {} value, signature promises {}",
                symbol.name,
                result.base_type(),
                codomain
            )));
        }
        Ok(result)
    }
}

/// Check well-formedness: nonempty distinct sigils, distinct symbol names,
/// signatures spelled over the universe, every arity at least one, and every
/// action type-checking to its declared codomain.
pub fn validate_dsl(dsl: &Dsl) -> ValidationReport {
    let mut diagnostics = Vec::new();

    let mut seen_sigils = BTreeSet::new();
    for (index, binding) in dsl.universe.iter().enumerate() {
        if binding.sigil.as_str().is_empty() {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::EmptySigilName,
                format!("types[{index}]: empty sigil name"),
            ));
            continue;
        }
        if !seen_sigils.insert(binding.sigil.as_str()) {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::DuplicateSigil,
                format!("duplicate sigil {}", binding.sigil),
            ));
        }
    }

    let mut seen_symbols = BTreeSet::new();
    for symbol in &dsl.symbols {
        let name = &symbol.name;
        if !seen_symbols.insert(name.as_str()) {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::DuplicateSymbol,
                format!("duplicate function {name}"),
            ));
        }
        let mut signature_ok = true;
        for (position, sigil) in symbol.signature.domain.iter().enumerate() {
            if !dsl.universe.contains(sigil.as_str()) {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::UnknownSigil,
                    format!("function {name}: unknown sigil {sigil} in domain position {position}"),
                ));
                signature_ok = false;
            }
        }
        if !dsl.universe.contains(symbol.signature.codomain.as_str()) {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::UnknownSigil,
                format!(
                    "function {name}: unknown sigil {} in codomain",
                    symbol.signature.codomain
                ),
            ));
            signature_ok = false;
        }
        if symbol.signature.domain.is_empty() {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::ZeroArity,
                format!("function {name}: domain must list at least one input"),
            ));
        }
        if !signature_ok {
            continue;
        }
        // Unwraps cannot fail: every sigil was just checked against the universe.
        let domain: Vec<BaseType> = symbol
            .signature
            .domain
            .iter()
            .map(|s| dsl.universe.denote(s.as_str()).unwrap())
            .collect();
        let codomain = dsl
            .universe
            .denote(symbol.signature.codomain.as_str())
            .unwrap();
        match symbol.action.infer_type(&domain) {
            Ok(got) if got == codomain => {}
            Ok(got) => diagnostics.push(Diagnostic::new(
                DiagnosticKind::IllTypedAction,
                format!("function {name}: action has type {got}, signature promises {codomain}"),
            )),
            Err(err) => diagnostics.push(Diagnostic::new(
                DiagnosticKind::IllTypedAction,
                format!("function {name}: {err}"),
            )),
        }
    }

    ValidationReport::from_diagnostics(diagnostics)
}
