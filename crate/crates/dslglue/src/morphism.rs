//! Structure-preserving maps between DSLs: a sigil map plus a symbol map,
//! checked for signature commutation and extensional action preservation.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::dsl::{validate_dsl, Dsl, Sigil, SymbolName};
use crate::error::Error;
use crate::report::{Diagnostic, DiagnosticKind, ValidationReport};
use crate::value::{enumerate_carrier, Value};

/// A map between DSLs: every source sigil is sent to a target sigil and
/// every source symbol to a target symbol. Carries its endpoints so checks
/// and serialized reports are self-contained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DslMorphism {
    pub source: Dsl,
    pub target: Dsl,
    pub type_map: BTreeMap<Sigil, Sigil>,
    pub symbol_map: BTreeMap<SymbolName, SymbolName>,
}

impl DslMorphism {
    pub fn new(
        source: Dsl,
        target: Dsl,
        type_map: BTreeMap<Sigil, Sigil>,
        symbol_map: BTreeMap<SymbolName, SymbolName>,
    ) -> DslMorphism {
        DslMorphism {
            source,
            target,
            type_map,
            symbol_map,
        }
    }

    /// The identity morphism on a DSL.
    pub fn identity(dsl: &Dsl) -> DslMorphism {
        DslMorphism {
            source: dsl.clone(),
            target: dsl.clone(),
            type_map: dsl
                .universe
                .sigils()
                .map(|s| (s.clone(), s.clone()))
                .collect(),
            symbol_map: dsl
                .symbols
                .iter()
                .map(|f| (f.name.clone(), f.name.clone()))
                .collect(),
        }
    }

    pub fn map_sigil(&self, sigil: &Sigil) -> Option<&Sigil> {
        self.type_map.get(sigil)
    }

    pub fn map_symbol(&self, name: &SymbolName) -> Option<&SymbolName> {
        self.symbol_map.get(name)
    }

    /// Compose with a following morphism; the caller is responsible for the
    /// endpoints matching (`self.target` = `next.source`).
    pub fn then(&self, next: &DslMorphism) -> Result<DslMorphism, Error> {
        let type_map = self
            .type_map
            .iter()
            .map(|(s, mid)| {
                next.map_sigil(mid)
                    .cloned()
                    .map(|out| (s.clone(), out))
                    .ok_or_else(|| Error::UnknownSigil(mid.clone()))
            })
            .collect::<Result<_, _>>()?;
        let symbol_map = self
            .symbol_map
            .iter()
            .map(|(f, mid)| {
                next.map_symbol(mid)
                    .cloned()
                    .map(|out| (f.clone(), out))
                    .ok_or_else(|| Error::UnknownSymbol(mid.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(DslMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            type_map,
            symbol_map,
        })
    }
}

/// Check that a morphism is structure-preserving.
///
/// The report covers: both endpoints validating, totality of both maps with
/// no stray entries, existence of all images, signature commutation for
/// every symbol, and extensional action preservation on all argument tuples
/// enumerated at `bound`. Extensional comparison only makes sense when the
/// mapped signatures denote the same carriers position by position; a
/// carrier change is reported instead of compared.
///
/// Sigils themselves may change carriers: a morphism used purely to direct
/// a gluing can relate sigils of different denotations, and the safety
/// obligations of the gluing decide whether that is acceptable.
pub fn check_morphism(morphism: &DslMorphism, bound: u64) -> Result<ValidationReport, Error> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    let mut diagnostics = Vec::new();

    let source_report = validate_dsl(&morphism.source);
    if !source_report.ok {
        diagnostics.push(Diagnostic::new(
            DiagnosticKind::InvalidSource,
            format!(
                "source DSL {} fails validation with {} diagnostics",
                morphism.source.name,
                source_report.diagnostics.len()
            ),
        ));
    }
    let target_report = validate_dsl(&morphism.target);
    if !target_report.ok {
        diagnostics.push(Diagnostic::new(
            DiagnosticKind::InvalidTarget,
            format!(
                "target DSL {} fails validation with {} diagnostics",
                morphism.target.name,
                target_report.diagnostics.len()
            ),
        ));
    }
    if !diagnostics.is_empty() {
        return Ok(ValidationReport::from_diagnostics(diagnostics));
    }

    for sigil in morphism.source.universe.sigils() {
        match morphism.map_sigil(sigil) {
            None => diagnostics.push(Diagnostic::new(
                DiagnosticKind::MissingTypeMapping,
                format!("source sigil {sigil} has no image"),
            )),
            Some(image) if !morphism.target.universe.contains(image.as_str()) => {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::UnknownTargetSigil,
                    format!("sigil {sigil} maps to {image}, which the target does not declare"),
                ))
            }
            Some(_) => {}
        }
    }
    for mapped in morphism.type_map.keys() {
        if !morphism.source.universe.contains(mapped.as_str()) {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::StrayTypeMapping,
                format!("type map mentions {mapped}, which the source does not declare"),
            ));
        }
    }
    for symbol in &morphism.source.symbols {
        match morphism.map_symbol(&symbol.name) {
            None => diagnostics.push(Diagnostic::new(
                DiagnosticKind::MissingSymbolMapping,
                format!("source symbol {} has no image", symbol.name),
            )),
            Some(image) if morphism.target.symbol(image.as_str()).is_none() => {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::UnknownTargetSymbol,
                    format!(
                        "symbol {} maps to {image}, which the target does not declare",
                        symbol.name
                    ),
                ))
            }
            Some(_) => {}
        }
    }
    for mapped in morphism.symbol_map.keys() {
        if morphism.source.symbol(mapped.as_str()).is_none() {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::StraySymbolMapping,
                format!("symbol map mentions {mapped}, which the source does not declare"),
            ));
        }
    }
    if !diagnostics.is_empty() {
        return Ok(ValidationReport::from_diagnostics(diagnostics));
    }

    // Both maps are total with existing images from here on.
    for symbol in &morphism.source.symbols {
        let image_name = morphism.map_symbol(&symbol.name).unwrap();
        let image = morphism.target.symbol(image_name.as_str()).unwrap();

        let translated_domain: Vec<Sigil> = symbol
            .signature
            .domain
            .iter()
            .map(|s| morphism.map_sigil(s).unwrap().clone())
            .collect();
        let translated_codomain = morphism.map_sigil(&symbol.signature.codomain).unwrap();
        if image.signature.domain != translated_domain
            || image.signature.codomain != *translated_codomain
        {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::SignatureCommutation,
                format!(
                    "symbol {}: image {} has signature {:?} -> {}, expected {:?} -> {}",
                    symbol.name,
                    image_name,
                    image.signature.domain,
                    image.signature.codomain,
                    translated_domain,
                    translated_codomain
                ),
            ));
            continue;
        }

        // Carrier agreement decides whether values can be passed through
        // unchanged for the extensional comparison.
        let mut carriers_agree = true;
        for (position, (s, t)) in symbol
            .signature
            .domain
            .iter()
            .zip(&translated_domain)
            .enumerate()
        {
            let source_base = morphism.source.universe.denote(s.as_str()).unwrap();
            let target_base = morphism.target.universe.denote(t.as_str()).unwrap();
            if source_base != target_base {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::CarrierMismatch,
                    format!(
                        "symbol {}: domain position {position} changes carrier from {source_base} to {target_base}; extensional comparison skipped",
                        symbol.name
                    ),
                ));
                carriers_agree = false;
            }
        }
        let source_out = morphism
            .source
            .universe
            .denote(symbol.signature.codomain.as_str())
            .unwrap();
        let target_out = morphism
            .target
            .universe
            .denote(translated_codomain.as_str())
            .unwrap();
        if source_out != target_out {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::CarrierMismatch,
                format!(
                    "symbol {}: codomain changes carrier from {source_out} to {target_out}; extensional comparison skipped",
                    symbol.name
                ),
            ));
            carriers_agree = false;
        }
        if !carriers_agree {
            continue;
        }

        let input_carriers: Vec<Vec<Value>> = symbol
            .signature
            .domain
            .iter()
            .map(|s| {
                enumerate_carrier(morphism.source.universe.denote(s.as_str()).unwrap(), bound)
            })
            .collect::<Result<_, _>>()?;
        for tuple in input_carriers
            .iter()
            .map(|carrier| carrier.iter())
            .multi_cartesian_product()
        {
            let args: Vec<Value> = tuple.into_iter().cloned().collect();
            let source_value = morphism.source.eval_action(symbol.name.as_str(), &args)?;
            let target_value = morphism.target.eval_action(image_name.as_str(), &args)?;
            if source_value != target_value {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::ActionPreservation,
                    format!(
                        "symbol {}: image {} disagrees at {:?}: {:?} vs {:?}",
                        symbol.name, image_name, args, source_value, target_value
                    ),
                ));
                break;
            }
        }
    }

    Ok(ValidationReport::from_diagnostics(diagnostics))
}
