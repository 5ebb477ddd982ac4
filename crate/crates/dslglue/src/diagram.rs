//! Finite diagrams of DSLs over a free shape and their colimits: the
//! quotient of the disjoint union of all node sigils and symbols by the
//! relation each edge morphism generates.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dsl::{validate_dsl, Dsl, FunctionSymbol, Sigil, SigilBinding, Signature, SymbolName, TypeUniverse};
use crate::error::Error;
use crate::glue::{symbols_agree, GlueWitness};
use crate::morphism::{check_morphism, DslMorphism};
use crate::quotient::{disambiguate, UnionFind};
use crate::report::{Diagnostic, DiagnosticKind, ValidationReport};
use crate::value::BaseType;

/// A directed edge of a diagram shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecl {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// A finite shape: named objects and directed edges between them. Shapes
/// are free, so no relations between edge composites are representable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Shape {
    pub objects: Vec<String>,
    pub edges: Vec<EdgeDecl>,
}

/// A diagram: a DSL per object and a morphism per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagram {
    pub shape: Shape,
    pub node_dsl: BTreeMap<String, Dsl>,
    pub edge_morphism: BTreeMap<String, DslMorphism>,
}

/// One element of a colimit class, tagged with the object it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeMember {
    pub object: String,
    pub name: String,
}

/// A class of the colimit quotient with its glued name. Members are
/// listed in object declaration order, then declaration order within an
/// object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeClass {
    pub name: String,
    pub members: Vec<NodeMember>,
}

/// A computed colimit: the glued DSL, one leg per object, the underlying
/// partitions, and the witnesses that discharged the safety obligations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColimitResult {
    pub colimit: Dsl,
    pub legs: BTreeMap<String, DslMorphism>,
    pub type_classes: Vec<NodeClass>,
    pub symbol_classes: Vec<NodeClass>,
    pub witnesses_used: Vec<GlueWitness>,
}

/// Check that a diagram is well formed: nonempty duplicate-free shape,
/// valid node DSLs, edges between declared objects, and one morphism per
/// edge whose endpoints match the nodes and which passes
/// [`check_morphism`] at `bound`.
pub fn validate_diagram(diagram: &Diagram, bound: u64) -> Result<ValidationReport, Error> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    let mut diagnostics = Vec::new();
    let mut push = |kind: DiagnosticKind, message: String| {
        diagnostics.push(Diagnostic::new(kind, message));
    };

    if diagram.shape.objects.is_empty() {
        push(DiagnosticKind::EmptyShape, "shape has no objects".to_owned());
    }
    let mut seen_objects = BTreeSet::new();
    for object in &diagram.shape.objects {
        if !seen_objects.insert(object.as_str()) {
            push(
                DiagnosticKind::DuplicateObject,
                format!("object {object} is declared more than once"),
            );
        }
    }
    for object in &diagram.shape.objects {
        match diagram.node_dsl.get(object) {
            None => push(
                DiagnosticKind::NodeInvalid,
                format!("object {object} has no DSL assigned"),
            ),
            Some(dsl) => {
                let report = validate_dsl(dsl);
                if !report.ok {
                    push(
                        DiagnosticKind::NodeInvalid,
                        format!(
                            "object {object}: DSL fails validation with {} diagnostics",
                            report.diagnostics.len()
                        ),
                    );
                }
            }
        }
    }
    for key in diagram.node_dsl.keys() {
        if !seen_objects.contains(key.as_str()) {
            push(
                DiagnosticKind::UnknownObject,
                format!("a DSL is assigned to undeclared object {key}"),
            );
        }
    }

    let mut seen_edges = BTreeSet::new();
    for edge in &diagram.shape.edges {
        if !seen_edges.insert(edge.name.as_str()) {
            push(
                DiagnosticKind::DuplicateEdge,
                format!("edge {} is declared more than once", edge.name),
            );
        }
        let mut endpoints_ok = true;
        for (role, object) in [("source", &edge.from), ("target", &edge.to)] {
            if !seen_objects.contains(object.as_str()) {
                push(
                    DiagnosticKind::UnknownObject,
                    format!("edge {}: unknown {role} object {object}", edge.name),
                );
                endpoints_ok = false;
            }
        }
        let Some(morphism) = diagram.edge_morphism.get(&edge.name) else {
            push(
                DiagnosticKind::EdgeMorphism,
                format!("edge {} has no morphism assigned", edge.name),
            );
            continue;
        };
        if !endpoints_ok {
            continue;
        }
        let from_dsl = diagram.node_dsl.get(&edge.from);
        let to_dsl = diagram.node_dsl.get(&edge.to);
        let mut anchored = true;
        if from_dsl.is_some_and(|d| *d != morphism.source) {
            push(
                DiagnosticKind::EdgeEndpointMismatch,
                format!(
                    "edge {}: morphism source differs from the DSL at {}",
                    edge.name, edge.from
                ),
            );
            anchored = false;
        }
        if to_dsl.is_some_and(|d| *d != morphism.target) {
            push(
                DiagnosticKind::EdgeEndpointMismatch,
                format!(
                    "edge {}: morphism target differs from the DSL at {}",
                    edge.name, edge.to
                ),
            );
            anchored = false;
        }
        if anchored {
            let report = check_morphism(morphism, bound)?;
            if !report.ok {
                push(
                    DiagnosticKind::EdgeMorphism,
                    format!(
                        "edge {}: morphism fails validation with {} diagnostics",
                        edge.name,
                        report.diagnostics.len()
                    ),
                );
            }
        }
    }
    for key in diagram.edge_morphism.keys() {
        if !seen_edges.contains(key.as_str()) {
            push(
                DiagnosticKind::EdgeMorphism,
                format!("a morphism is assigned to undeclared edge {key}"),
            );
        }
    }

    Ok(ValidationReport::from_diagnostics(diagnostics))
}

struct NodeGround {
    types: Vec<(String, Sigil, BaseType)>,
    type_index: BTreeMap<(String, String), usize>,
    symbols: Vec<(String, SymbolName)>,
    symbol_index: BTreeMap<(String, String), usize>,
}

fn node_ground(diagram: &Diagram) -> NodeGround {
    let mut ground = NodeGround {
        types: Vec::new(),
        type_index: BTreeMap::new(),
        symbols: Vec::new(),
        symbol_index: BTreeMap::new(),
    };
    for object in &diagram.shape.objects {
        let dsl = &diagram.node_dsl[object];
        for binding in dsl.universe.iter() {
            ground.type_index.insert(
                (object.clone(), binding.sigil.as_str().to_owned()),
                ground.types.len(),
            );
            ground
                .types
                .push((object.clone(), binding.sigil.clone(), binding.base));
        }
        for symbol in &dsl.symbols {
            ground.symbol_index.insert(
                (object.clone(), symbol.name.as_str().to_owned()),
                ground.symbols.len(),
            );
            ground.symbols.push((object.clone(), symbol.name.clone()));
        }
    }
    ground
}

/// Compute the colimit of a validated diagram.
///
/// The sigil quotient merges `x` at an edge's source with its image at
/// the edge's target, closed transitively; symbols are quotiented the
/// same way. Naming follows the gluing convention: member names joined
/// with `+` in ground order, `#n` suffixes on collision. Safety requires
/// every merged sigil pair to share a denotation and be covered by a
/// witness (the pair is matched regardless of witness orientation), and
/// every merged symbol pair to agree extensionally at `bound`.
pub fn colimit(
    diagram: &Diagram,
    witnesses: &[GlueWitness],
    bound: u64,
) -> Result<ColimitResult, Error> {
    let validation = validate_diagram(diagram, bound)?;
    if !validation.ok {
        return Err(Error::DiagramInvalid(validation));
    }

    let ground = node_ground(diagram);
    let mut type_uf = UnionFind::new(ground.types.len());
    let mut symbol_uf = UnionFind::new(ground.symbols.len());
    for edge in &diagram.shape.edges {
        let morphism = &diagram.edge_morphism[&edge.name];
        for sigil in morphism.source.universe.sigils() {
            let image = morphism
                .map_sigil(sigil)
                .expect("validated morphisms have total type maps");
            let from = ground.type_index[&(edge.from.clone(), sigil.as_str().to_owned())];
            let to = ground.type_index[&(edge.to.clone(), image.as_str().to_owned())];
            type_uf.union(from, to);
        }
        for symbol in &morphism.source.symbols {
            let image = morphism
                .map_symbol(&symbol.name)
                .expect("validated morphisms have total symbol maps");
            let from = ground.symbol_index[&(edge.from.clone(), symbol.name.as_str().to_owned())];
            let to = ground.symbol_index[&(edge.to.clone(), image.as_str().to_owned())];
            symbol_uf.union(from, to);
        }
    }
    let type_partition = type_uf.classes();
    let symbol_partition = symbol_uf.classes();

    // Safety obligations, mirrored from the two-sided gluing but over
    // unordered member pairs: witnesses match by name pair in either
    // orientation.
    let mut diagnostics = Vec::new();
    let mut used = vec![false; witnesses.len()];
    for class in &type_partition {
        for (position, &a) in class.iter().enumerate() {
            let (_, a_sigil, a_base) = &ground.types[a];
            for &b in &class[position + 1..] {
                let (_, b_sigil, b_base) = &ground.types[b];
                if a_base != b_base {
                    diagnostics.push(Diagnostic::new(
                        DiagnosticKind::UnglueableTypes,
                        format!(
                            "no base type equates {a_base} and {b_base}: sigils {a_sigil} and {b_sigil} cannot be merged"
                        ),
                    ));
                    continue;
                }
                let found = witnesses.iter().position(|w| {
                    (w.left == *a_sigil && w.right == *b_sigil)
                        || (w.left == *b_sigil && w.right == *a_sigil)
                });
                match found {
                    None => diagnostics.push(Diagnostic::new(
                        DiagnosticKind::MissingWitness,
                        format!(
                            "merged sigils {a_sigil} and {b_sigil} are not covered by any witness"
                        ),
                    )),
                    Some(index) if witnesses[index].base != *a_base => {
                        diagnostics.push(Diagnostic::new(
                            DiagnosticKind::WitnessBaseMismatch,
                            format!(
                                "witness for {a_sigil} and {b_sigil} names base {}, but both sigils denote {a_base}",
                                witnesses[index].base
                            ),
                        ))
                    }
                    Some(index) => used[index] = true,
                }
            }
        }
    }
    for class in &symbol_partition {
        let (first_object, first_name) = &ground.symbols[class[0]];
        let first_dsl = &diagram.node_dsl[first_object];
        for &index in &class[1..] {
            let (object, name) = &ground.symbols[index];
            if let Some(diagnostic) =
                symbols_agree(first_dsl, first_name, &diagram.node_dsl[object], name, bound)?
            {
                diagnostics.push(diagnostic);
            }
        }
    }
    let safety = ValidationReport::from_diagnostics(diagnostics);
    if !safety.ok {
        return Err(Error::SafetyViolation(safety));
    }
    let witnesses_used: Vec<GlueWitness> = witnesses
        .iter()
        .zip(&used)
        .filter(|(_, &u)| u)
        .map(|(w, _)| w.clone())
        .collect();

    let class_records = |partition: &[Vec<usize>], member: &dyn Fn(usize) -> NodeMember| {
        let joined: Vec<String> = partition
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&i| member(i).name)
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        let names = disambiguate(joined);
        partition
            .iter()
            .zip(names)
            .map(|(class, name)| NodeClass {
                name,
                members: class.iter().map(|&i| member(i)).collect(),
            })
            .collect::<Vec<_>>()
    };
    let type_classes = class_records(&type_partition, &|i| NodeMember {
        object: ground.types[i].0.clone(),
        name: ground.types[i].1.as_str().to_owned(),
    });
    let symbol_classes = class_records(&symbol_partition, &|i| NodeMember {
        object: ground.symbols[i].0.clone(),
        name: ground.symbols[i].1.as_str().to_owned(),
    });

    let mut sigil_class: BTreeMap<(String, String), Sigil> = BTreeMap::new();
    for (class, record) in type_partition.iter().zip(&type_classes) {
        for &i in class {
            let (object, sigil, _) = &ground.types[i];
            sigil_class.insert(
                (object.clone(), sigil.as_str().to_owned()),
                Sigil::from(record.name.as_str()),
            );
        }
    }
    let mut symbol_class: BTreeMap<(String, String), SymbolName> = BTreeMap::new();
    for (class, record) in symbol_partition.iter().zip(&symbol_classes) {
        for &i in class {
            let (object, name) = &ground.symbols[i];
            symbol_class.insert(
                (object.clone(), name.as_str().to_owned()),
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
                base: ground.types[class[0]].2,
            })
            .collect(),
    );

    let translate_signature = |signature: &Signature, object: &str| -> Signature {
        Signature {
            domain: signature
                .domain
                .iter()
                .map(|s| sigil_class[&(object.to_owned(), s.as_str().to_owned())].clone())
                .collect(),
            codomain: sigil_class[&(object.to_owned(), signature.codomain.as_str().to_owned())]
                .clone(),
        }
    };

    let mut symbols = Vec::new();
    for (class, record) in symbol_partition.iter().zip(&symbol_classes) {
        let (first_object, first_name) = &ground.symbols[class[0]];
        let first_symbol = diagram.node_dsl[first_object]
            .symbol(first_name.as_str())
            .expect("ground symbol exists at its object");
        let signature = translate_signature(&first_symbol.signature, first_object);
        for &i in &class[1..] {
            let (object, name) = &ground.symbols[i];
            let member_symbol = diagram.node_dsl[object]
                .symbol(name.as_str())
                .expect("ground symbol exists at its object");
            if translate_signature(&member_symbol.signature, object) != signature {
                return Err(Error::InconsistentQuotient(format!(
                    "symbols {first_name} and {name} fall into one class but their signatures quotient differently"
                )));
            }
        }
        symbols.push(FunctionSymbol {
            name: SymbolName::from(record.name.as_str()),
            signature,
            action: first_symbol.action.clone(),
        });
    }

    let colimit_dsl = Dsl {
        name: diagram
            .shape
            .objects
            .iter()
            .map(|o| diagram.node_dsl[o].name.as_str())
            .collect::<Vec<_>>()
            .join("+"),
        universe,
        symbols,
    };

    // Safety compared the members pairwise; independently confirm each
    // member also agrees with the glued symbol it landed in.
    for (class, record) in symbol_partition.iter().zip(&symbol_classes) {
        for &i in class {
            let (object, name) = &ground.symbols[i];
            if let Some(diagnostic) = symbols_agree(
                &colimit_dsl,
                &SymbolName::from(record.name.as_str()),
                &diagram.node_dsl[object],
                name,
                bound,
            )? {
                return Err(Error::ActionDisagreement(diagnostic.message));
            }
        }
    }

    let legs: BTreeMap<String, DslMorphism> = diagram
        .shape
        .objects
        .iter()
        .map(|object| {
            let source = &diagram.node_dsl[object];
            let morphism = DslMorphism {
                source: source.clone(),
                target: colimit_dsl.clone(),
                type_map: source
                    .universe
                    .sigils()
                    .map(|s| {
                        (
                            s.clone(),
                            sigil_class[&(object.clone(), s.as_str().to_owned())].clone(),
                        )
                    })
                    .collect(),
                symbol_map: source
                    .symbols
                    .iter()
                    .map(|f| {
                        (
                            f.name.clone(),
                            symbol_class[&(object.clone(), f.name.as_str().to_owned())].clone(),
                        )
                    })
                    .collect(),
            };
            (object.clone(), morphism)
        })
        .collect();

    Ok(ColimitResult {
        colimit: colimit_dsl,
        legs,
        type_classes,
        symbol_classes,
        witnesses_used,
    })
}

/// Check that the legs of a colimit form a cocone over the diagram: for
/// every edge, following the edge morphism and then the target's leg
/// agrees with the source's leg, on sigils and on symbols.
pub fn check_cocone(diagram: &Diagram, result: &ColimitResult) -> ValidationReport {
    let mut diagnostics = Vec::new();
    for object in &diagram.shape.objects {
        if !result.legs.contains_key(object) {
            diagnostics.push(Diagnostic::new(
                DiagnosticKind::LegCommutation,
                format!("object {object} has no leg"),
            ));
        }
    }
    for edge in &diagram.shape.edges {
        let (Some(morphism), Some(leg_from), Some(leg_to)) = (
            diagram.edge_morphism.get(&edge.name),
            result.legs.get(&edge.from),
            result.legs.get(&edge.to),
        ) else {
            continue;
        };
        for sigil in morphism.source.universe.sigils() {
            let direct = leg_from.map_sigil(sigil);
            let through = morphism.map_sigil(sigil).and_then(|s| leg_to.map_sigil(s));
            if direct.is_none() || direct != through {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::LegCommutation,
                    format!(
                        "edge {}: sigil {sigil} reaches {} through {} but {} directly",
                        edge.name,
                        display_option(through),
                        edge.to,
                        display_option(direct),
                    ),
                ));
            }
        }
        for symbol in &morphism.source.symbols {
            let direct = leg_from.map_symbol(&symbol.name);
            let through = morphism
                .map_symbol(&symbol.name)
                .and_then(|s| leg_to.map_symbol(s));
            if direct.is_none() || direct != through {
                diagnostics.push(Diagnostic::new(
                    DiagnosticKind::LegCommutation,
                    format!(
                        "edge {}: symbol {} reaches {} through {} but {} directly",
                        edge.name,
                        symbol.name,
                        display_option(through),
                        edge.to,
                        display_option(direct),
                    ),
                ));
            }
        }
    }
    ValidationReport::from_diagnostics(diagnostics)
}

fn display_option<T: std::fmt::Display>(value: Option<&T>) -> String {
    match value {
        Some(v) => v.to_string(),
        None => "nothing".to_owned(),
    }
}


#[cfg(test)]
mod tests {
    use super::test_diagrams::*;
    use super::*;
    use crate::dsl::fixtures;
    use crate::glue::test_spans;
    use itertools::Itertools;

    fn class_names(classes: &[NodeClass]) -> Vec<&str> {
        classes.iter().map(|c| c.name.as_str()).collect()
    }

    #[test]
    fn span_diagram_validates() {
        let (diagram, _) = span_diagram();
        assert!(validate_diagram(&diagram, 3).unwrap().ok);
    }

    #[test]
    fn span_colimit_has_four_classes_and_uses_all_witnesses() {
        let (diagram, witnesses) = span_diagram();
        let result = colimit(&diagram, &witnesses, 3).unwrap();
        assert_eq!(
            class_names(&result.type_classes),
            vec!["nat+z+i", "str", "s", "p"]
        );
        assert_eq!(
            result.type_classes[0].members,
            vec![
                NodeMember {
                    object: "-1".to_owned(),
                    name: "nat".to_owned()
                },
                NodeMember {
                    object: "0".to_owned(),
                    name: "z".to_owned()
                },
                NodeMember {
                    object: "1".to_owned(),
                    name: "i".to_owned()
                },
            ]
        );
        assert_eq!(result.witnesses_used, witnesses);
        assert_eq!(result.colimit.name, "dslu+z-nat+dslp");
        assert_eq!(
            class_names(&result.symbol_classes),
            vec!["fprint", "finput", "ffields", "fprint#2"]
        );
        assert!(crate::dsl::validate_dsl(&result.colimit).ok);
        for leg in result.legs.values() {
            assert!(check_morphism(leg, 3).unwrap().ok);
        }
        assert!(check_cocone(&diagram, &result).ok);
    }

    #[test]
    fn span_colimit_matches_the_pushout_after_renaming() {
        let (diagram, witnesses) = span_diagram();
        let result = colimit(&diagram, &witnesses, 3).unwrap();
        let (span, span_witnesses) = test_spans::nat_span();
        let pushed = crate::glue::pushout(&span, &span_witnesses, 3).unwrap();

        // Classes correspond by their members at the two outer objects;
        // the apex object only contributes to the colimit's ground.
        let side_of = |object: &str| match object {
            "-1" => Some(crate::glue::Side::Left),
            "1" => Some(crate::glue::Side::Right),
            _ => None,
        };
        let project = |class: &NodeClass| {
            class
                .members
                .iter()
                .filter_map(|m| side_of(&m.object).map(|s| (s, m.name.clone())))
                .sorted()
                .collect::<Vec<_>>()
        };
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        for class in &result.type_classes {
            let counterpart = pushed
                .type_classes
                .iter()
                .find(|c| {
                    c.members
                        .iter()
                        .map(|m| (m.side, m.name.clone()))
                        .sorted()
                        .collect::<Vec<_>>()
                        == project(class)
                })
                .expect("every colimit class projects to a pushout class");
            rename.insert(class.name.clone(), counterpart.name.clone());
        }
        let renamed_universe: Vec<(String, BaseType)> = result
            .colimit
            .universe
            .iter()
            .map(|b| (rename[b.sigil.as_str()].clone(), b.base))
            .collect();
        let pushout_universe: Vec<(String, BaseType)> = pushed
            .glued
            .universe
            .iter()
            .map(|b| (b.sigil.as_str().to_owned(), b.base))
            .collect();
        assert_eq!(renamed_universe, pushout_universe);

        // Symbol classes are all singletons here and even share names.
        assert_eq!(
            class_names(&result.symbol_classes),
            pushed
                .symbol_classes
                .iter()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>()
        );
        for (ours, theirs) in result.colimit.symbols.iter().zip(&pushed.glued.symbols) {
            assert_eq!(ours.name, theirs.name);
            assert_eq!(
                ours.signature
                    .domain
                    .iter()
                    .map(|s| rename[s.as_str()].clone())
                    .collect::<Vec<_>>(),
                theirs
                    .signature
                    .domain
                    .iter()
                    .map(|s| s.as_str().to_owned())
                    .collect::<Vec<_>>()
            );
            assert_eq!(
                rename[ours.signature.codomain.as_str()],
                theirs.signature.codomain.as_str()
            );
            assert_eq!(ours.action, theirs.action);
        }
    }

    #[test]
    fn discrete_diagram_gives_the_coproduct() {
        let diagram = discrete_pair();
        let result = colimit(&diagram, &[], 3).unwrap();
        assert_eq!(result.colimit.universe.len(), 5);
        assert_eq!(result.colimit.symbols.len(), 4);
        assert_eq!(
            class_names(&result.type_classes),
            vec!["nat", "str", "i", "s", "p"]
        );
        assert!(result.type_classes.iter().all(|c| c.members.len() == 1));
        assert!(result.witnesses_used.is_empty());
        assert!(check_cocone(&diagram, &result).ok);
    }

    #[test]
    fn one_object_colimit_is_the_node_itself() {
        let diagram = one_object(fixtures::dslu());
        let result = colimit(&diagram, &[], 3).unwrap();
        assert_eq!(result.colimit.universe, fixtures::dslu().universe);
        assert_eq!(result.colimit.symbols, fixtures::dslu().symbols);
        let leg = &result.legs["only"];
        for sigil in fixtures::dslu().universe.sigils() {
            assert_eq!(leg.map_sigil(sigil), Some(sigil));
        }
    }

    #[test]
    fn recomputing_over_the_output_changes_nothing() {
        let (diagram, witnesses) = span_diagram();
        let first = colimit(&diagram, &witnesses, 3).unwrap();
        let again = colimit(&one_object(first.colimit.clone()), &[], 3).unwrap();
        assert_eq!(again.colimit.universe, first.colimit.universe);
        assert_eq!(again.colimit.symbols, first.colimit.symbols);
        assert!(again.type_classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn edge_declaration_order_does_not_matter() {
        let (diagram, witnesses) = span_diagram();
        let mut reversed = diagram.clone();
        reversed.shape.edges.reverse();
        let a = colimit(&diagram, &witnesses, 3).unwrap();
        let b = colimit(&reversed, &witnesses, 3).unwrap();
        assert_eq!(a.colimit, b.colimit);
        assert_eq!(a.type_classes, b.type_classes);
        assert_eq!(a.symbol_classes, b.symbol_classes);
        assert_eq!(a.legs, b.legs);
    }

    #[test]
    fn structural_defects_are_reported() {
        let empty = Diagram {
            shape: Shape {
                objects: Vec::new(),
                edges: Vec::new(),
            },
            node_dsl: BTreeMap::new(),
            edge_morphism: BTreeMap::new(),
        };
        let report = validate_diagram(&empty, 3).unwrap();
        assert_eq!(report.diagnostics[0].kind, DiagnosticKind::EmptyShape);
        assert!(matches!(
            colimit(&empty, &[], 3),
            Err(Error::DiagramInvalid(_))
        ));

        let (mut diagram, _) = span_diagram();
        diagram
            .edge_morphism
            .get_mut("l")
            .unwrap()
            .source
            .name
            .push('!');
        let report = validate_diagram(&diagram, 3).unwrap();
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.kind == DiagnosticKind::EdgeEndpointMismatch));

        let (diagram, _) = span_diagram();
        assert!(matches!(
            validate_diagram(&diagram, 0),
            Err(Error::InvalidBound)
        ));
    }

    #[test]
    fn merges_without_witnesses_fail_safety() {
        let (diagram, _) = span_diagram();
        match colimit(&diagram, &[], 3) {
            Err(Error::SafetyViolation(report)) => {
                assert_eq!(report.diagnostics.len(), 3);
                assert!(report
                    .diagnostics
                    .iter()
                    .all(|d| d.kind == DiagnosticKind::MissingWitness));
            }
            other => panic!("expected a safety violation, got {other:?}"),
        }
    }

    #[test]
    fn witness_orientation_is_ignored() {
        let (diagram, witnesses) = span_diagram();
        let flipped: Vec<GlueWitness> = witnesses
            .iter()
            .map(|w| GlueWitness {
                left: w.right.clone(),
                right: w.left.clone(),
                base: w.base,
            })
            .collect();
        let result = colimit(&diagram, &flipped, 3).unwrap();
        assert_eq!(result.witnesses_used, flipped);
    }

    #[test]
    fn tampered_legs_break_cocone_commutation() {
        let (diagram, witnesses) = span_diagram();
        let mut result = colimit(&diagram, &witnesses, 3).unwrap();
        result
            .legs
            .get_mut("-1")
            .unwrap()
            .type_map
            .insert(Sigil::from("nat"), Sigil::from("str"));
        let report = check_cocone(&diagram, &result);
        assert!(!report.ok);
        assert!(report
            .diagnostics
            .iter()
            .all(|d| d.kind == DiagnosticKind::LegCommutation));
    }
}
