//! Brute-force verification of the universal property: every candidate
//! cocone over a gluing (or a diagram) must factor through the computed
//! result by exactly one mediating sigil map.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::diagram::{check_cocone, ColimitResult, Diagram};
use crate::dsl::{validate_dsl, Dsl, FunctionSymbol, Sigil, SigilBinding, Signature, TypeUniverse};
use crate::error::Error;
use crate::glue::{PushoutResult, Span};
use crate::morphism::{check_morphism, DslMorphism};
use crate::report::{Diagnostic, DiagnosticKind};
use crate::value::BaseType;

/// Abort threshold for the enumeration: a predicted workload above this
/// many elementary candidates is refused up front.
pub const SEARCH_CEILING: u128 = 20_000_000;

/// Outcome of a universal-property check. `targets` counts candidate
/// universes, `cocones` the commuting cocones among all leg assignments
/// into them, and `symbol_cocones` the carrier-preserving cocones whose
/// unique mediator was additionally verified as a full DSL morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniversalCheck {
    pub ok: bool,
    pub targets: u64,
    pub cocones: u64,
    pub symbol_cocones: u64,
    pub diagnostics: Vec<Diagnostic>,
}

impl UniversalCheck {
    fn failed(diagnostics: Vec<Diagnostic>) -> Self {
        UniversalCheck {
            ok: false,
            targets: 0,
            cocones: 0,
            symbol_cocones: 0,
            diagnostics,
        }
    }
}

/// All functions from a `domain_len`-element set into a `targets`-element
/// set, as index vectors in lexicographic order.
fn all_maps(domain_len: usize, targets: usize) -> Vec<Vec<usize>> {
    if domain_len == 0 {
        return vec![Vec::new()];
    }
    (0..domain_len)
        .map(|_| 0..targets)
        .multi_cartesian_product()
        .collect()
}

fn sigil_positions(dsl: &Dsl) -> (Vec<Sigil>, BTreeMap<String, usize>) {
    let sigils: Vec<Sigil> = dsl.universe.sigils().cloned().collect();
    let index = sigils
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str().to_owned(), i))
        .collect();
    (sigils, index)
}

fn distinct_bases(dsl: &Dsl) -> Vec<BaseType> {
    dsl.universe
        .iter()
        .map(|b| b.base)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn checked_pow(base: u128, exponent: u32) -> u128 {
    base.checked_pow(exponent).unwrap_or(u128::MAX)
}

fn predicted_work(
    base_count: usize,
    leg_domain_total: usize,
    mediator_domain: usize,
    max_target_sigils: u64,
) -> u128 {
    let mut total: u128 = 0;
    for size in 1..=max_target_sigils {
        let universes = checked_pow(base_count as u128, size as u32);
        let legs = checked_pow(size as u128, leg_domain_total as u32);
        let mediators = checked_pow(size as u128, mediator_domain as u32);
        total = total
            .saturating_add(universes.saturating_mul(legs.saturating_mul(mediators)));
    }
    total
}

/// Check the universal property of a pushout: for every candidate type
/// universe with at most `max_target_sigils` sigils (drawn from the bases
/// of the glued universe) and every pair of sigil maps out of the two
/// glued sides that agree on the apex, exactly one sigil map out of the
/// glued DSL factors both. Carrier-preserving cocones get a second pass:
/// their mediator must also be a valid DSL morphism carrying the glued
/// symbols.
pub fn verify_universal_property(
    result: &PushoutResult,
    span: &Span,
    max_target_sigils: u64,
) -> Result<UniversalCheck, Error> {
    if max_target_sigils > 3 {
        return Err(Error::TargetCapExceeded(max_target_sigils));
    }

    let (left_sigils, left_index) = sigil_positions(&span.left.target);
    let (right_sigils, right_index) = sigil_positions(&span.right.target);
    let (glued_sigils, glued_index) = sigil_positions(&result.glued);

    // The result is only a cocone at all if its own square commutes;
    // nothing else is meaningful when it does not.
    let mut square_failures = Vec::new();
    for sigil in span.apex.universe.sigils() {
        let through_left = span
            .left
            .map_sigil(sigil)
            .and_then(|s| result.inj_left.map_sigil(s));
        let through_right = span
            .right
            .map_sigil(sigil)
            .and_then(|s| result.inj_right.map_sigil(s));
        if through_left.is_none() || through_left != through_right {
            square_failures.push(Diagnostic::new(
                DiagnosticKind::NonCommutingSquare,
                format!("apex sigil {sigil} is not carried to a common glued sigil"),
            ));
        }
    }
    for symbol in &span.apex.symbols {
        let through_left = span
            .left
            .map_symbol(&symbol.name)
            .and_then(|s| result.inj_left.map_symbol(s));
        let through_right = span
            .right
            .map_symbol(&symbol.name)
            .and_then(|s| result.inj_right.map_symbol(s));
        if through_left.is_none() || through_left != through_right {
            square_failures.push(Diagnostic::new(
                DiagnosticKind::NonCommutingSquare,
                format!(
                    "apex symbol {} is not carried to a common glued symbol",
                    symbol.name
                ),
            ));
        }
    }
    if !square_failures.is_empty() {
        return Ok(UniversalCheck::failed(square_failures));
    }

    // Apex constraints and injection images as positions, for the filters.
    let apex_pairs: Vec<(usize, usize)> = span
        .apex
        .universe
        .sigils()
        .map(|z| {
            let l = left_index[span.left.map_sigil(z).unwrap().as_str()];
            let r = right_index[span.right.map_sigil(z).unwrap().as_str()];
            (l, r)
        })
        .collect();
    let inj_left_pos: Vec<usize> = left_sigils
        .iter()
        .map(|s| glued_index[result.inj_left.map_sigil(s).unwrap().as_str()])
        .collect();
    let inj_right_pos: Vec<usize> = right_sigils
        .iter()
        .map(|s| glued_index[result.inj_right.map_sigil(s).unwrap().as_str()])
        .collect();
    let left_bases: Vec<BaseType> = left_sigils
        .iter()
        .map(|s| span.left.target.denote_type(s))
        .collect::<Result<_, _>>()?;
    let right_bases: Vec<BaseType> = right_sigils
        .iter()
        .map(|s| span.right.target.denote_type(s))
        .collect::<Result<_, _>>()?;

    let bases = distinct_bases(&result.glued);
    let predicted = predicted_work(
        bases.len(),
        left_sigils.len() + right_sigils.len(),
        glued_sigils.len(),
        max_target_sigils,
    );
    if predicted > SEARCH_CEILING {
        return Err(Error::SearchSpaceExceeded {
            candidates: predicted,
            ceiling: SEARCH_CEILING,
        });
    }

    let mut check = UniversalCheck {
        ok: true,
        targets: 0,
        cocones: 0,
        symbol_cocones: 0,
        diagnostics: Vec::new(),
    };
    for size in 1..=max_target_sigils as usize {
        for universe_bases in (0..size).map(|_| bases.iter().copied()).multi_cartesian_product() {
            check.targets += 1;
            let left_legs = all_maps(left_sigils.len(), size);
            let right_legs = all_maps(right_sigils.len(), size);
            let mediator_candidates = all_maps(glued_sigils.len(), size);
            for k_left in &left_legs {
                for k_right in &right_legs {
                    if apex_pairs.iter().any(|&(l, r)| k_left[l] != k_right[r]) {
                        continue;
                    }
                    check.cocones += 1;
                    let mediators: Vec<&Vec<usize>> = mediator_candidates
                        .iter()
                        .filter(|u| {
                            inj_left_pos.iter().enumerate().all(|(x, &p)| u[p] == k_left[x])
                                && inj_right_pos
                                    .iter()
                                    .enumerate()
                                    .all(|(x, &p)| u[p] == k_right[x])
                        })
                        .collect();
                    match mediators.len() {
                        1 => {}
                        0 => {
                            check.diagnostics.push(Diagnostic::new(
                                DiagnosticKind::MissingMediator,
                                format!(
                                    "no mediator for the cocone with target bases {universe_bases:?}, legs {k_left:?} and {k_right:?}"
                                ),
                            ));
                            continue;
                        }
                        n => {
                            check.diagnostics.push(Diagnostic::new(
                                DiagnosticKind::NonUniqueMediator,
                                format!(
                                    "{n} mediators for the cocone with target bases {universe_bases:?}, legs {k_left:?} and {k_right:?}"
                                ),
                            ));
                            continue;
                        }
                    }
                    let preserves = k_left
                        .iter()
                        .enumerate()
                        .all(|(x, &slot)| universe_bases[slot] == left_bases[x])
                        && k_right
                            .iter()
                            .enumerate()
                            .all(|(x, &slot)| universe_bases[slot] == right_bases[x]);
                    if preserves {
                        check.symbol_cocones += 1;
                        if let Some(diagnostic) =
                            mediator_morphism_defect(&result.glued, &glued_sigils, &universe_bases, mediators[0])?
                        {
                            check.diagnostics.push(diagnostic);
                        }
                    }
                }
            }
        }
    }
    check.ok = check.diagnostics.is_empty();
    Ok(check)
}

/// Promote a sigil-level mediator into a DSL morphism onto a freshly
/// built target carrying the translated glued symbols, and validate it.
/// Returns a diagnostic if the target DSL or the morphism fails.
fn mediator_morphism_defect(
    glued: &Dsl,
    glued_sigils: &[Sigil],
    universe_bases: &[BaseType],
    mediator: &[usize],
) -> Result<Option<Diagnostic>, Error> {
    let slot_sigil = |slot: usize| Sigil::from(format!("e{slot}"));
    let universe = TypeUniverse::new(
        universe_bases
            .iter()
            .enumerate()
            .map(|(i, &base)| SigilBinding {
                sigil: slot_sigil(i),
                base,
            })
            .collect(),
    );
    let translate = |sigil: &Sigil| {
        let position = glued_sigils.iter().position(|s| s == sigil).unwrap();
        slot_sigil(mediator[position])
    };
    let symbols: Vec<FunctionSymbol> = glued
        .symbols
        .iter()
        .map(|f| FunctionSymbol {
            name: f.name.clone(),
            signature: Signature {
                domain: f.signature.domain.iter().map(&translate).collect(),
                codomain: translate(&f.signature.codomain),
            },
            action: f.action.clone(),
        })
        .collect();
    let target = Dsl {
        name: "mediator-target".to_owned(),
        universe,
        symbols,
    };
    if !validate_dsl(&target).ok {
        return Ok(Some(Diagnostic::new(
            DiagnosticKind::MissingMediator,
            format!(
                "the mediator {mediator:?} into bases {universe_bases:?} does not carry the glued symbols to a valid DSL"
            ),
        )));
    }
    let morphism = DslMorphism {
        source: glued.clone(),
        target,
        type_map: glued_sigils
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), slot_sigil(mediator[i])))
            .collect(),
        symbol_map: glued
            .symbols
            .iter()
            .map(|f| (f.name.clone(), f.name.clone()))
            .collect(),
    };
    // A shallow bound keeps this pass cheap; the glued symbols were
    // already compared extensionally at the full bound during gluing.
    let report = check_morphism(&morphism, 2)?;
    if !report.ok {
        return Ok(Some(Diagnostic::new(
            DiagnosticKind::MissingMediator,
            format!(
                "the mediator {mediator:?} into bases {universe_bases:?} is not a DSL morphism: {} diagnostics",
                report.diagnostics.len()
            ),
        )));
    }
    Ok(None)
}

/// Check the universal property of a colimit at the sigil level: for
/// every candidate universe with at most `max_target_sigils` sigils and
/// every family of per-object sigil maps commuting with all edges,
/// exactly one sigil map out of the colimit factors the family.
pub fn verify_colimit_universal(
    result: &ColimitResult,
    diagram: &Diagram,
    max_target_sigils: u64,
) -> Result<UniversalCheck, Error> {
    if max_target_sigils > 3 {
        return Err(Error::TargetCapExceeded(max_target_sigils));
    }

    let cocone = check_cocone(diagram, result);
    if !cocone.ok {
        return Ok(UniversalCheck::failed(vec![Diagnostic::new(
            DiagnosticKind::NonCommutingSquare,
            format!(
                "the colimit's own legs fail to form a cocone: {} commutation failures",
                cocone.diagnostics.len()
            ),
        )]));
    }

    let objects = &diagram.shape.objects;
    let node_data: Vec<(Vec<Sigil>, BTreeMap<String, usize>)> = objects
        .iter()
        .map(|o| sigil_positions(&diagram.node_dsl[o]))
        .collect();
    let object_index: BTreeMap<&str, usize> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| (o.as_str(), i))
        .collect();
    let (colimit_sigils, colimit_index) = sigil_positions(&result.colimit);

    // Edge constraints as (from object, from position, to object, to
    // position) quadruples over the per-object leg assignments.
    let mut constraints = Vec::new();
    for edge in &diagram.shape.edges {
        let from = object_index[edge.from.as_str()];
        let to = object_index[edge.to.as_str()];
        let morphism = &diagram.edge_morphism[&edge.name];
        for (position, sigil) in node_data[from].0.iter().enumerate() {
            let image = morphism.map_sigil(sigil).unwrap();
            constraints.push((from, position, to, node_data[to].1[image.as_str()]));
        }
    }
    // Leg images as positions into the colimit universe.
    let leg_pos: Vec<Vec<usize>> = objects
        .iter()
        .enumerate()
        .map(|(i, o)| {
            node_data[i]
                .0
                .iter()
                .map(|s| colimit_index[result.legs[o].map_sigil(s).unwrap().as_str()])
                .collect()
        })
        .collect();

    let bases = distinct_bases(&result.colimit);
    let leg_domain_total: usize = node_data.iter().map(|(sigils, _)| sigils.len()).sum();
    let predicted = predicted_work(
        bases.len(),
        leg_domain_total,
        colimit_sigils.len(),
        max_target_sigils,
    );
    if predicted > SEARCH_CEILING {
        return Err(Error::SearchSpaceExceeded {
            candidates: predicted,
            ceiling: SEARCH_CEILING,
        });
    }

    let mut check = UniversalCheck {
        ok: true,
        targets: 0,
        cocones: 0,
        symbol_cocones: 0,
        diagnostics: Vec::new(),
    };
    for size in 1..=max_target_sigils as usize {
        for universe_bases in (0..size).map(|_| bases.iter().copied()).multi_cartesian_product() {
            check.targets += 1;
            let per_object_legs: Vec<Vec<Vec<usize>>> = node_data
                .iter()
                .map(|(sigils, _)| all_maps(sigils.len(), size))
                .collect();
            let mediator_candidates = all_maps(colimit_sigils.len(), size);
            for family in per_object_legs
                .iter()
                .map(|legs| legs.iter())
                .multi_cartesian_product()
            {
                if constraints
                    .iter()
                    .any(|&(fo, fp, to, tp)| family[fo][fp] != family[to][tp])
                {
                    continue;
                }
                check.cocones += 1;
                let mediators = mediator_candidates
                    .iter()
                    .filter(|u| {
                        leg_pos.iter().enumerate().all(|(o, positions)| {
                            positions
                                .iter()
                                .enumerate()
                                .all(|(x, &p)| u[p] == family[o][x])
                        })
                    })
                    .count();
                match mediators {
                    1 => {}
                    0 => check.diagnostics.push(Diagnostic::new(
                        DiagnosticKind::MissingMediator,
                        format!(
                            "no mediator for the cocone with target bases {universe_bases:?}, legs {family:?}"
                        ),
                    )),
                    n => check.diagnostics.push(Diagnostic::new(
                        DiagnosticKind::NonUniqueMediator,
                        format!(
                            "{n} mediators for the cocone with target bases {universe_bases:?}, legs {family:?}"
                        ),
                    )),
                }
            }
        }
    }
    check.ok = check.diagnostics.is_empty();
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::test_diagrams::{discrete_pair, span_diagram};
    use crate::diagram::{colimit, Shape};
    use crate::dsl::fixtures;
    use crate::glue::test_spans::{empty_span, nat_span};
    use crate::glue::pushout;

    #[test]
    fn packaged_pushout_satisfies_the_universal_property() {
        let (span, witnesses) = nat_span();
        let result = pushout(&span, &witnesses, 3).unwrap();
        let check = verify_universal_property(&result, &span, 3).unwrap();
        assert!(check.ok, "diagnostics: {:?}", check.diagnostics);
        // 3 + 9 + 27 universes over the three distinct glued bases.
        assert_eq!(check.targets, 39);
        // One apex sigil pins one of the five leg slots, so a size-s
        // universe admits s^4 commuting cocones: 3*1 + 9*16 + 27*81.
        assert_eq!(check.cocones, 2334);
        // Carrier-preserving cocones need all three bases present, which
        // forces the six size-3 permutations, one cocone each.
        assert_eq!(check.symbol_cocones, 6);
    }

    #[test]
    fn colimit_verifier_agrees_with_the_pushout_verifier() {
        let (span, span_witnesses) = nat_span();
        let pushed = pushout(&span, &span_witnesses, 3).unwrap();
        let pushout_check = verify_universal_property(&pushed, &span, 3).unwrap();

        let (diagram, witnesses) = span_diagram();
        let result = colimit(&diagram, &witnesses, 3).unwrap();
        let colimit_check = verify_colimit_universal(&result, &diagram, 3).unwrap();
        assert!(colimit_check.ok, "diagnostics: {:?}", colimit_check.diagnostics);
        // The apex leg is forced by either edge, so the commuting
        // families match the pushout's cocones one for one.
        assert_eq!(colimit_check.cocones, pushout_check.cocones);
        assert_eq!(colimit_check.targets, pushout_check.targets);
    }

    #[test]
    fn coproduct_mediators_are_unique() {
        let span = empty_span();
        let result = pushout(&span, &[], 3).unwrap();
        let check = verify_universal_property(&result, &span, 2).unwrap();
        assert!(check.ok);
        // No apex constraints: 3*1 + 9*32 commuting cocones.
        assert_eq!(check.cocones, 291);

        let diagram = discrete_pair();
        let colimit_result = colimit(&diagram, &[], 3).unwrap();
        let colimit_check = verify_colimit_universal(&colimit_result, &diagram, 2).unwrap();
        assert!(colimit_check.ok);
        assert_eq!(colimit_check.cocones, 291);
    }

    #[test]
    fn caps_above_three_are_rejected() {
        let (span, witnesses) = nat_span();
        let result = pushout(&span, &witnesses, 3).unwrap();
        assert!(matches!(
            verify_universal_property(&result, &span, 4),
            Err(Error::TargetCapExceeded(4))
        ));
        let (diagram, witnesses) = span_diagram();
        let colimit_result = colimit(&diagram, &witnesses, 3).unwrap();
        assert!(matches!(
            verify_colimit_universal(&colimit_result, &diagram, 4),
            Err(Error::TargetCapExceeded(4))
        ));
    }

    #[test]
    fn broken_squares_are_caught_before_enumeration() {
        let (span, witnesses) = nat_span();
        let mut result = pushout(&span, &witnesses, 3).unwrap();
        result
            .inj_left
            .type_map
            .insert(Sigil::from("nat"), Sigil::from("s"));
        let check = verify_universal_property(&result, &span, 3).unwrap();
        assert!(!check.ok);
        assert_eq!(
            check.diagnostics[0].kind,
            DiagnosticKind::NonCommutingSquare
        );
        assert_eq!(check.cocones, 0);
    }

    #[test]
    fn unreachable_glued_sigils_make_mediators_ambiguous() {
        let (span, witnesses) = nat_span();
        let mut result = pushout(&span, &witnesses, 3).unwrap();
        let mut bindings: Vec<_> = result.glued.universe.iter().cloned().collect();
        bindings.push(SigilBinding {
            sigil: Sigil::from("extra"),
            base: BaseType::Natural,
        });
        result.glued.universe = TypeUniverse::new(bindings);
        let check = verify_universal_property(&result, &span, 2).unwrap();
        assert!(!check.ok);
        assert!(check
            .diagnostics
            .iter()
            .all(|d| d.kind == DiagnosticKind::NonUniqueMediator));
    }

    #[test]
    fn over_merged_gluings_lose_mediators() {
        let (span, witnesses) = nat_span();
        let mut result = pushout(&span, &witnesses, 3).unwrap();
        let bindings: Vec<_> = result
            .glued
            .universe
            .iter()
            .filter(|b| b.sigil.as_str() != "str")
            .cloned()
            .collect();
        result.glued.universe = TypeUniverse::new(bindings);
        result
            .inj_left
            .type_map
            .insert(Sigil::from("str"), Sigil::from("s"));
        let check = verify_universal_property(&result, &span, 2).unwrap();
        assert!(!check.ok);
        assert!(check
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::MissingMediator));
    }

    #[test]
    fn oversized_searches_are_refused() {
        let objects: Vec<String> = (0..4).map(|i| format!("o{i}")).collect();
        let diagram = Diagram {
            shape: Shape {
                objects: objects.clone(),
                edges: Vec::new(),
            },
            node_dsl: objects
                .iter()
                .map(|o| (o.clone(), fixtures::dslp()))
                .collect(),
            edge_morphism: BTreeMap::new(),
        };
        let result = colimit(&diagram, &[], 2).unwrap();
        match verify_colimit_universal(&result, &diagram, 3) {
            Err(Error::SearchSpaceExceeded { candidates, ceiling }) => {
                assert!(candidates > ceiling);
                assert_eq!(ceiling, SEARCH_CEILING);
            }
            other => panic!("expected search-space refusal, got {other:?}"),
        }
    }
}
