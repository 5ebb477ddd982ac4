//! Gluing two DSLs along a span: the pushout quotient of the disjoint
//! sigil and symbol unions, guarded by witness-based safety obligations.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::dsl::{Dsl, FunctionSymbol, Sigil, SigilBinding, Signature, SymbolName, TypeUniverse};
use crate::error::Error;
use crate::morphism::{check_morphism, DslMorphism};
use crate::quotient::{disambiguate, UnionFind};
use crate::report::{Diagnostic, DiagnosticKind, ValidationReport};
use crate::value::{enumerate_carrier, BaseType, Value};

/// Evidence that two sigils slated for merging denote the same base type:
/// the named base must equal both denotations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlueWitness {
    pub left: Sigil,
    pub right: Sigil,
    pub base: BaseType,
}

/// Two morphisms out of a common apex DSL.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Span {
    pub apex: Dsl,
    pub left: DslMorphism,
    pub right: DslMorphism,
}

/// Which leg of the span a merged element came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn label(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// One element of a quotient class, tagged with its side of origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SidedName {
    pub side: Side,
    pub name: String,
}

/// A class of the quotient with its glued name. Members are listed left
/// side first, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientClass {
    pub name: String,
    pub members: Vec<SidedName>,
}

/// A successful gluing: the glued DSL, the two canonical injections, and
/// the underlying partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushoutResult {
    pub glued: Dsl,
    pub inj_left: DslMorphism,
    pub inj_right: DslMorphism,
    pub type_classes: Vec<QuotientClass>,
    pub symbol_classes: Vec<QuotientClass>,
}

// Ground element of the sigil quotient.
struct TypeEntry {
    side: Side,
    sigil: Sigil,
    base: BaseType,
}

// Ground element of the symbol quotient.
struct SymbolEntry {
    side: Side,
    name: SymbolName,
}

struct Ground {
    types: Vec<TypeEntry>,
    type_index: BTreeMap<(Side, String), usize>,
    symbols: Vec<SymbolEntry>,
    symbol_index: BTreeMap<(Side, String), usize>,
}

fn require_span_shape(span: &Span) -> Result<(), Error> {
    if span.left.source != span.apex {
        return Err(Error::InvalidSpan(
            "left morphism does not start at the apex".to_owned(),
        ));
    }
    if span.right.source != span.apex {
        return Err(Error::InvalidSpan(
            "right morphism does not start at the apex".to_owned(),
        ));
    }
    Ok(())
}

/// Disjoint union of both target universes and symbol lists, with the
/// quotients generated by the apex: the two images of every apex sigil are
/// merged, and likewise for symbols.
fn ground_quotient(span: &Span) -> Result<(Ground, Vec<Vec<usize>>, Vec<Vec<usize>>), Error> {
    let mut ground = Ground {
        types: Vec::new(),
        type_index: BTreeMap::new(),
        symbols: Vec::new(),
        symbol_index: BTreeMap::new(),
    };
    for (side, dsl) in [(Side::Left, &span.left.target), (Side::Right, &span.right.target)] {
        for binding in dsl.universe.iter() {
            ground
                .type_index
                .insert((side, binding.sigil.as_str().to_owned()), ground.types.len());
            ground.types.push(TypeEntry {
                side,
                sigil: binding.sigil.clone(),
                base: binding.base,
            });
        }
        for symbol in &dsl.symbols {
            ground
                .symbol_index
                .insert((side, symbol.name.as_str().to_owned()), ground.symbols.len());
            ground.symbols.push(SymbolEntry {
                side,
                name: symbol.name.clone(),
            });
        }
    }

    let mut type_uf = UnionFind::new(ground.types.len());
    for sigil in span.apex.universe.sigils() {
        let image_index = |morphism: &DslMorphism, side: Side| {
            let image = morphism.map_sigil(sigil).ok_or_else(|| {
                Error::InvalidSpan(format!(
                    "apex sigil {sigil} has no image on the {} side",
                    side.label()
                ))
            })?;
            ground
                .type_index
                .get(&(side, image.as_str().to_owned()))
                .copied()
                .ok_or_else(|| {
                    Error::InvalidSpan(format!(
                        "apex sigil {sigil} maps to {image}, missing from the {} DSL",
                        side.label()
                    ))
                })
        };
        let l = image_index(&span.left, Side::Left)?;
        let r = image_index(&span.right, Side::Right)?;
        type_uf.union(l, r);
    }

    let mut symbol_uf = UnionFind::new(ground.symbols.len());
    for symbol in &span.apex.symbols {
        let image_index = |morphism: &DslMorphism, side: Side| {
            let image = morphism.map_symbol(&symbol.name).ok_or_else(|| {
                Error::InvalidSpan(format!(
                    "apex symbol {} has no image on the {} side",
                    symbol.name,
                    side.label()
                ))
            })?;
            ground
                .symbol_index
                .get(&(side, image.as_str().to_owned()))
                .copied()
                .ok_or_else(|| {
                    Error::InvalidSpan(format!(
                        "apex symbol {} maps to {image}, missing from the {} DSL",
                        symbol.name,
                        side.label()
                    ))
                })
        };
        let l = image_index(&span.left, Side::Left)?;
        let r = image_index(&span.right, Side::Right)?;
        symbol_uf.union(l, r);
    }

    let type_classes = type_uf.classes();
    let symbol_classes = symbol_uf.classes();
    Ok((ground, type_classes, symbol_classes))
}

/// Compare two symbols extensionally at `bound`. Returns the first
/// diagnostic that rules out agreement: an arity difference, a carrier
/// difference anywhere in the denoted signatures, or a tuple the actions
/// disagree on.
pub(crate) fn symbols_agree(
    a_dsl: &Dsl,
    a_name: &SymbolName,
    b_dsl: &Dsl,
    b_name: &SymbolName,
    bound: u64,
) -> Result<Option<Diagnostic>, Error> {
    let a = a_dsl
        .symbol(a_name.as_str())
        .ok_or_else(|| Error::UnknownSymbol(a_name.clone()))?;
    let b = b_dsl
        .symbol(b_name.as_str())
        .ok_or_else(|| Error::UnknownSymbol(b_name.clone()))?;
    if a.arity() != b.arity() {
        return Ok(Some(Diagnostic::new(
            DiagnosticKind::SymbolArityMismatch,
            format!(
                "merged symbols {a_name} and {b_name} have arities {} and {}",
                a.arity(),
                b.arity()
            ),
        )));
    }
    let a_domain = a_dsl.denote_domain(&a.signature)?;
    let b_domain = b_dsl.denote_domain(&b.signature)?;
    for (position, (da, db)) in a_domain.iter().zip(&b_domain).enumerate() {
        if da != db {
            return Ok(Some(Diagnostic::new(
                DiagnosticKind::SymbolCarrierMismatch,
                format!(
                    "merged symbols {a_name} and {b_name} disagree on the carrier at position {position}: {da} vs {db}"
                ),
            )));
        }
    }
    let a_out = a_dsl.denote_type(&a.signature.codomain)?;
    let b_out = b_dsl.denote_type(&b.signature.codomain)?;
    if a_out != b_out {
        return Ok(Some(Diagnostic::new(
            DiagnosticKind::SymbolCarrierMismatch,
            format!(
                "merged symbols {a_name} and {b_name} disagree on the output carrier: {a_out} vs {b_out}"
            ),
        )));
    }
    let carriers: Vec<Vec<Value>> = a_domain
        .iter()
        .map(|base| enumerate_carrier(*base, bound))
        .collect::<Result<_, _>>()?;
    for tuple in carriers
        .iter()
        .map(|carrier| carrier.iter())
        .multi_cartesian_product()
    {
        let args: Vec<Value> = tuple.into_iter().cloned().collect();
        let va = a_dsl.eval_action(a_name.as_str(), &args)?;
        let vb = b_dsl.eval_action(b_name.as_str(), &args)?;
        if va != vb {
            return Ok(Some(Diagnostic::new(
                DiagnosticKind::SymbolDisagreement,
                format!(
                    "merged symbols {a_name} and {b_name} disagree at {args:?}: {va:?} vs {vb:?}"
                ),
            )));
        }
    }
    Ok(None)
}

/// Check the safety obligations of a gluing: every merged sigil pair must
/// share a denotation and be covered by a witness naming it, and every
/// merged symbol pair must agree extensionally at `bound`.
pub fn check_safety(
    span: &Span,
    witnesses: &[GlueWitness],
    bound: u64,
) -> Result<ValidationReport, Error> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    require_span_shape(span)?;
    let (ground, type_classes, symbol_classes) = ground_quotient(span)?;
    let mut diagnostics = Vec::new();

    for class in &type_classes {
        let lefts: Vec<&TypeEntry> = class
            .iter()
            .map(|&i| &ground.types[i])
            .filter(|e| e.side == Side::Left)
            .collect();
        let rights: Vec<&TypeEntry> = class
            .iter()
            .map(|&i| &ground.types[i])
            .filter(|e| e.side == Side::Right)
            .collect();
        for l in &lefts {
            for r in &rights {
                if l.base != r.base {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticKind::UnglueableTypes,
                        format!(
                            "no base type equates {} and {}: sigils {} and {} cannot be merged",
                            l.base, r.base, l.sigil, r.sigil
                        ),
                    ));
                    continue;
                }
                match witnesses
                    .iter()
                    .find(|w| w.left == l.sigil && w.right == r.sigil)
                {
                    None => diagnostics.push(Diagnostic::new(
                        DiagnosticKind::MissingWitness,
                        format!(
                            "merged sigils {} and {} are not covered by any witness",
                            l.sigil, r.sigil
                        ),
                    )),
                    Some(w) if w.base != l.base => diagnostics.push(Diagnostic::new(
                        DiagnosticKind::WitnessBaseMismatch,
                        format!(
                            "witness for {} and {} names base {}, but both sigils denote {}",
                            l.sigil, r.sigil, w.base, l.base
                        ),
                    )),
                    Some(_) => {}
                }
            }
        }
    }

    for class in &symbol_classes {
        let first = &ground.symbols[class[0]];
        let first_dsl = side_dsl(span, first.side);
        for &index in &class[1..] {
            let other = &ground.symbols[index];
            let other_dsl = side_dsl(span, other.side);
            if let Some(diagnostic) =
                symbols_agree(first_dsl, &first.name, other_dsl, &other.name, bound)?
            {
                diagnostics.push(diagnostic);
            }
        }
    }

    Ok(ValidationReport::from_diagnostics(diagnostics))
}

fn side_dsl(span: &Span, side: Side) -> &Dsl {
    match side {
        Side::Left => &span.left.target,
        Side::Right => &span.right.target,
    }
}

fn class_records(
    classes: &[Vec<usize>],
    member_name: impl Fn(usize) -> SidedName,
) -> Vec<QuotientClass> {
    let joined: Vec<String> = classes
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&i| member_name(i).name)
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let names = disambiguate(joined);
    classes
        .iter()
        .zip(names)
        .map(|(class, name)| QuotientClass {
            name,
            members: class.iter().map(|&i| member_name(i)).collect(),
        })
        .collect()
}

/// Glue the two target DSLs of a span along the apex-induced quotient.
///
/// Both morphisms must pass [`check_morphism`] and the safety obligations
/// of [`check_safety`] must hold; the glued DSL takes one sigil per type
/// class (named by joining member names with `+`, disambiguated with `#n`
/// on collision) and one symbol per symbol class (same naming, signature
/// translated through the type quotient, action taken from the first
/// member). The injections send every element to its class.
pub fn pushout(
    span: &Span,
    witnesses: &[GlueWitness],
    bound: u64,
) -> Result<PushoutResult, Error> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    require_span_shape(span)?;
    for (side, morphism) in [(Side::Left, &span.left), (Side::Right, &span.right)] {
        let report = check_morphism(morphism, bound)?;
        if !report.ok {
            return Err(Error::MorphismInvalid {
                side: side.label().to_owned(),
                report,
            });
        }
    }
    let safety = check_safety(span, witnesses, bound)?;
    if !safety.ok {
        return Err(Error::SafetyViolation(safety));
    }

    let (ground, type_partition, symbol_partition) = ground_quotient(span)?;
    let type_classes = class_records(&type_partition, |i| SidedName {
        side: ground.types[i].side,
        name: ground.types[i].sigil.as_str().to_owned(),
    });
    let symbol_classes = class_records(&symbol_partition, |i| SidedName {
        side: ground.symbols[i].side,
        name: ground.symbols[i].name.as_str().to_owned(),
    });

    // Lookup from a sided sigil to its glued class name.
    let mut sigil_class: BTreeMap<(Side, String), Sigil> = BTreeMap::new();
    for (class, record) in type_partition.iter().zip(&type_classes) {
        for &i in class {
            let entry = &ground.types[i];
            sigil_class.insert(
                (entry.side, entry.sigil.as_str().to_owned()),
                Sigil::from(record.name.as_str()),
            );
        }
    }
    let mut symbol_class: BTreeMap<(Side, String), SymbolName> = BTreeMap::new();
    for (class, record) in symbol_partition.iter().zip(&symbol_classes) {
        for &i in class {
            let entry = &ground.symbols[i];
            symbol_class.insert(
                (entry.side, entry.name.as_str().to_owned()),
                SymbolName::from(record.name.as_str()),
            );
        }
    }

    let universe = TypeUniverse::new(
        type_partition
            .iter()
            .zip(&type_classes)
            .map(|(class, record)| SigilBinding {
                sigil: Sigil::from(record.name.as_str()),
                // Safety guarantees all members share one denotation.
                base: ground.types[class[0]].base,
            })
            .collect(),
    );

    let translate_signature = |signature: &Signature, side: Side| -> Result<Signature, Error> {
        let domain = signature
            .domain
            .iter()
            .map(|s| {
                sigil_class
                    .get(&(side, s.as_str().to_owned()))
                    .cloned()
                    .ok_or_else(|| Error::UnknownSigil(s.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let codomain = sigil_class
            .get(&(side, signature.codomain.as_str().to_owned()))
            .cloned()
            .ok_or_else(|| Error::UnknownSigil(signature.codomain.clone()))?;
        Ok(Signature { domain, codomain })
    };

    let mut symbols = Vec::new();
    for (class, record) in symbol_partition.iter().zip(&symbol_classes) {
        let first = &ground.symbols[class[0]];
        let first_symbol = side_dsl(span, first.side)
            .symbol(first.name.as_str())
            .expect("ground symbol exists in its side");
        let signature = translate_signature(&first_symbol.signature, first.side)?;
        // The quotient is only coherent if every member translates to the
        // same signature; morphism commutation guarantees it, but the
        // result is unusable if this ever breaks, so re-derive and compare.
        for &i in &class[1..] {
            let member = &ground.symbols[i];
            let member_symbol = side_dsl(span, member.side)
                .symbol(member.name.as_str())
                .expect("ground symbol exists in its side");
            let translated = translate_signature(&member_symbol.signature, member.side)?;
            if translated != signature {
                return Err(Error::InconsistentQuotient(format!(
                    "symbols {} and {} fall into one class but their signatures quotient differently",
                    first.name, member.name
                )));
            }
        }
        symbols.push(FunctionSymbol {
            name: SymbolName::from(record.name.as_str()),
            signature,
            action: first_symbol.action.clone(),
        });
    }

    let glued = Dsl {
        name: format!("{}+{}", span.left.target.name, span.right.target.name),
        universe,
        symbols,
    };

    // Safety already compared merged members pairwise; independently
    // confirm every member agrees with the glued symbol it landed in.
    for (class, record) in symbol_partition.iter().zip(&symbol_classes) {
        for &i in class {
            let member = &ground.symbols[i];
            if let Some(diagnostic) = symbols_agree(
                &glued,
                &SymbolName::from(record.name.as_str()),
                side_dsl(span, member.side),
                &member.name,
                bound,
            )? {
                return Err(Error::ActionDisagreement(diagnostic.message));
            }
        }
    }

    let injection = |side: Side, source: &Dsl| -> DslMorphism {
        DslMorphism {
            source: source.clone(),
            target: glued.clone(),
            type_map: source
                .universe
                .sigils()
                .map(|s| {
                    (
                        s.clone(),
                        sigil_class[&(side, s.as_str().to_owned())].clone(),
                    )
                })
                .collect(),
            symbol_map: source
                .symbols
                .iter()
                .map(|f| {
                    (
                        f.name.clone(),
                        symbol_class[&(side, f.name.as_str().to_owned())].clone(),
                    )
                })
                .collect(),
        }
    };
    let inj_left = injection(Side::Left, &span.left.target);
    let inj_right = injection(Side::Right, &span.right.target);

    Ok(PushoutResult {
        glued,
        inj_left,
        inj_right,
        type_classes,
        symbol_classes,
    })
}


#[cfg(test)]
mod tests {
    use super::test_spans::*;
    use super::*;
    use crate::action::TermExpr;


    fn class_names(classes: &[QuotientClass]) -> Vec<&str> {
        classes.iter().map(|c| c.name.as_str()).collect()
    }

    #[test]
    fn packaged_span_glues_into_four_type_classes() {
        let (span, witnesses) = nat_span();
        let result = pushout(&span, &witnesses, 3).unwrap();
        assert_eq!(
            class_names(&result.type_classes),
            vec!["nat+i", "str", "s", "p"]
        );
        assert_eq!(
            result.type_classes[0].members,
            vec![
                SidedName {
                    side: Side::Left,
                    name: "nat".to_owned()
                },
                SidedName {
                    side: Side::Right,
                    name: "i".to_owned()
                },
            ]
        );
        assert_eq!(result.glued.name, "dslu+dslp");
        let bases: Vec<BaseType> = result.glued.universe.iter().map(|b| b.base).collect();
        assert_eq!(
            bases,
            vec![
                BaseType::Natural,
                BaseType::String,
                BaseType::Fieldmap,
                BaseType::String
            ]
        );
        // Unmerged symbols keep their names; the collision between the two
        // fprints is resolved by suffixing the right one.
        assert_eq!(
            class_names(&result.symbol_classes),
            vec!["fprint", "finput", "ffields", "fprint#2"]
        );
        assert!(crate::dsl::validate_dsl(&result.glued).ok);
    }

    #[test]
    fn pushout_square_commutes_and_injections_are_morphisms() {
        let (span, witnesses) = nat_span();
        let result = pushout(&span, &witnesses, 3).unwrap();
        for sigil in span.apex.universe.sigils() {
            let through_left = result
                .inj_left
                .map_sigil(span.left.map_sigil(sigil).unwrap())
                .unwrap();
            let through_right = result
                .inj_right
                .map_sigil(span.right.map_sigil(sigil).unwrap())
                .unwrap();
            assert_eq!(through_left, through_right);
        }
        assert!(check_morphism(&result.inj_left, 3).unwrap().ok);
        assert!(check_morphism(&result.inj_right, 3).unwrap().ok);
    }

    #[test]
    fn empty_apex_gives_the_disjoint_union() {
        let span = empty_span();
        let result = pushout(&span, &[], 3).unwrap();
        assert_eq!(result.glued.universe.len(), 5);
        assert_eq!(result.glued.symbols.len(), 4);
        assert_eq!(
            class_names(&result.type_classes),
            vec!["nat", "str", "i", "s", "p"]
        );
        assert!(result.type_classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn merging_unequal_carriers_is_a_safety_violation() {
        let (span, witnesses) = bad_span();
        let safety = check_safety(&span, &witnesses, 3).unwrap();
        assert!(!safety.ok);
        assert_eq!(safety.diagnostics.len(), 1);
        assert_eq!(safety.diagnostics[0].kind, DiagnosticKind::UnglueableTypes);
        assert!(safety.diagnostics[0]
            .message
            .contains("no base type equates string and fieldmap"));
        match pushout(&span, &witnesses, 3) {
            Err(Error::SafetyViolation(report)) => assert_eq!(report, safety),
            other => panic!("expected a safety violation, got {other:?}"),
        }
    }

    #[test]
    fn merges_without_witnesses_are_rejected() {
        let (span, _) = nat_span();
        let safety = check_safety(&span, &[], 3).unwrap();
        assert_eq!(safety.diagnostics.len(), 1);
        assert_eq!(safety.diagnostics[0].kind, DiagnosticKind::MissingWitness);
        // A witness naming the wrong base is also rejected.
        let wrong = vec![GlueWitness {
            left: Sigil::from("nat"),
            right: Sigil::from("i"),
            base: BaseType::String,
        }];
        let safety = check_safety(&span, &wrong, 3).unwrap();
        assert_eq!(
            safety.diagnostics[0].kind,
            DiagnosticKind::WitnessBaseMismatch
        );
    }

    #[test]
    fn no_merges_means_vacuous_safety() {
        let span = empty_span();
        assert!(check_safety(&span, &[], 3).unwrap().ok);
    }

    #[test]
    fn safety_passing_at_a_bound_passes_below_it() {
        let (span, witnesses) = symbol_merging_span();
        assert!(check_safety(&span, &witnesses, 3).unwrap().ok);
        for bound in [1, 2] {
            assert!(check_safety(&span, &witnesses, bound).unwrap().ok);
        }
    }

    #[test]
    fn apex_symbols_merge_their_images() {
        let (span, witnesses) = symbol_merging_span();
        let result = pushout(&span, &witnesses, 3).unwrap();
        assert_eq!(
            class_names(&result.type_classes),
            vec!["nat+i", "str+p", "s"]
        );
        assert_eq!(
            class_names(&result.symbol_classes),
            vec!["fprint+fprint", "finput", "ffields"]
        );
        let merged = result.glued.symbol("fprint+fprint").unwrap();
        assert_eq!(
            merged.signature.domain,
            vec![Sigil::from("nat+i"), Sigil::from("str+p")]
        );
        assert_eq!(merged.signature.codomain, Sigil::from("str+p"));
        assert_eq!(
            result
                .glued
                .eval_action("fprint+fprint", &[Value::nat(2), Value::str("abc")])
                .unwrap(),
            Value::str("ab")
        );
        assert!(crate::dsl::validate_dsl(&result.glued).ok);
    }

    #[test]
    fn safety_compares_merged_symbols_extensionally() {
        // Bypass the morphism checks by calling check_safety directly on a
        // span whose right image behaves differently: it must be the
        // safety report, not morphism validation, that catches this.
        let (mut span, witnesses) = symbol_merging_span();
        let fprint = span.right.target.symbol("fprint").unwrap().name.clone();
        let symbol = span
            .right
            .target
            .symbols
            .iter_mut()
            .find(|s| s.name == fprint)
            .unwrap();
        symbol.action = TermExpr::apply(
            TermExpr::builtin("take_prefix"),
            vec![
                TermExpr::apply(
                    TermExpr::builtin("add"),
                    vec![TermExpr::arg(0), TermExpr::lit(Value::nat(1))],
                ),
                TermExpr::arg(1),
            ],
        );
        let safety = check_safety(&span, &witnesses, 3).unwrap();
        assert!(!safety.ok);
        assert_eq!(
            safety.diagnostics[0].kind,
            DiagnosticKind::SymbolDisagreement
        );
    }

    #[test]
    fn safety_flags_arity_mismatches_between_merged_symbols() {
        let (mut span, witnesses) = symbol_merging_span();
        span.right
            .symbol_map
            .insert(SymbolName::from("g"), SymbolName::from("ffields"));
        let safety = check_safety(&span, &witnesses, 3).unwrap();
        assert!(safety
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::SymbolArityMismatch));
    }

    #[test]
    fn invalid_spans_and_morphisms_are_input_errors() {
        let (mut span, witnesses) = nat_span();
        span.apex.name = "other".to_owned();
        assert!(matches!(
            pushout(&span, &witnesses, 3),
            Err(Error::InvalidSpan(_))
        ));

        let (mut span, witnesses) = nat_span();
        span.left
            .type_map
            .insert(Sigil::from("z"), Sigil::from("bogus"));
        match pushout(&span, &witnesses, 3) {
            Err(Error::MorphismInvalid { side, .. }) => assert_eq!(side, "left"),
            other => panic!("expected morphism failure, got {other:?}"),
        }

        let (span, witnesses) = nat_span();
        assert!(matches!(
            pushout(&span, &witnesses, 0),
            Err(Error::InvalidBound)
        ));
    }

    #[test]
    fn swapping_the_span_renames_but_preserves_structure() {
        let (span, witnesses) = nat_span();
        let forward = pushout(&span, &witnesses, 3).unwrap();
        let swapped_span = Span {
            apex: span.apex.clone(),
            left: span.right.clone(),
            right: span.left.clone(),
        };
        let swapped_witnesses: Vec<GlueWitness> = witnesses
            .iter()
            .map(|w| GlueWitness {
                left: w.right.clone(),
                right: w.left.clone(),
                base: w.base,
            })
            .collect();
        let backward = pushout(&swapped_span, &swapped_witnesses, 3).unwrap();

        // Classes correspond by their member sets once sides are swapped.
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        for class in &backward.type_classes {
            let mirrored: Vec<(Side, &str)> = class
                .members
                .iter()
                .map(|m| {
                    let side = match m.side {
                        Side::Left => Side::Right,
                        Side::Right => Side::Left,
                    };
                    (side, m.name.as_str())
                })
                .sorted()
                .collect();
            let counterpart = forward
                .type_classes
                .iter()
                .find(|c| {
                    c.members
                        .iter()
                        .map(|m| (m.side, m.name.as_str()))
                        .sorted()
                        .collect::<Vec<_>>()
                        == mirrored
                })
                .expect("every swapped class has a counterpart");
            rename.insert(class.name.clone(), counterpart.name.clone());
        }
        assert_eq!(rename.len(), forward.type_classes.len());

        let renamed: Vec<(String, BaseType)> = backward
            .glued
            .universe
            .iter()
            .map(|b| (rename[b.sigil.as_str()].clone(), b.base))
            .sorted()
            .collect();
        let original: Vec<(String, BaseType)> = forward
            .glued
            .universe
            .iter()
            .map(|b| (b.sigil.as_str().to_owned(), b.base))
            .sorted()
            .collect();
        assert_eq!(renamed, original);
    }
}
