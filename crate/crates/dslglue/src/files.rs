//! JSON file formats: DSLs, operad terms, gluing and diagram input
//! files, and the composition reports the CLI writes and reads
//! back for universal-property checking.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::diagram::{ColimitResult, Diagram, EdgeDecl, Shape};
use crate::dsl::{Dsl, Sigil, SymbolName};
use crate::error::Error;
use crate::glue::{GlueWitness, PushoutResult, Span};
use crate::morphism::DslMorphism;
use crate::operad::OperadTerm;
use crate::report::ValidationReport;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Serialize `value` as pretty-printed JSON with a trailing newline. The
/// byte output is deterministic: struct fields keep declaration order and
/// all maps are ordered.
pub fn to_json_string(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

/// Write `value` to `path` as pretty-printed JSON.
pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Error> {
    fs::write(path, to_json_string(value)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Load a `.dsl.json` file.
pub fn load_dsl(path: &Path) -> Result<Dsl, Error> {
    read_json(path)
}

/// Load a `.term.json` file.
pub fn load_term(path: &Path) -> Result<OperadTerm, Error> {
    read_json(path)
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapPair {
    #[serde(default)]
    types: BTreeMap<Sigil, Sigil>,
    #[serde(default)]
    functions: BTreeMap<SymbolName, SymbolName>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlueFile {
    left: String,
    right: String,
    apex: String,
    left_map: MapPair,
    right_map: MapPair,
    #[serde(default)]
    witnesses: Vec<GlueWitness>,
    bound: u64,
}

/// A gluing input file resolved against the file system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGlue {
    pub span: Span,
    pub witnesses: Vec<GlueWitness>,
    pub bound: u64,
}

fn resolve(base: &Path, relative: &str) -> PathBuf {
    let path = Path::new(relative);
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

/// Load a `.glue.json` file. DSL paths inside it are resolved relative to
/// the file's own directory.
pub fn load_glue(path: &Path) -> Result<LoadedGlue, Error> {
    let file: GlueFile = read_json(path)?;
    if file.bound == 0 {
        return Err(Error::Format {
            path: path.display().to_string(),
            message: "bound must be at least 1".to_owned(),
        });
    }
    let base = path.parent().unwrap_or_else(|| Path::new(""));
    let apex = load_dsl(&resolve(base, &file.apex))?;
    let left = load_dsl(&resolve(base, &file.left))?;
    let right = load_dsl(&resolve(base, &file.right))?;
    let span = Span {
        apex: apex.clone(),
        left: DslMorphism::new(
            apex.clone(),
            left,
            file.left_map.types,
            file.left_map.functions,
        ),
        right: DslMorphism::new(apex, right, file.right_map.types, file.right_map.functions),
    };
    Ok(LoadedGlue {
        span,
        witnesses: file.witnesses,
        bound: file.bound,
    })
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectDecl {
    name: String,
    dsl: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    name: String,
    from: String,
    to: String,
    #[serde(default)]
    type_map: BTreeMap<Sigil, Sigil>,
    #[serde(default)]
    function_map: BTreeMap<SymbolName, SymbolName>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    objects: Vec<ObjectDecl>,
    #[serde(default)]
    edges: Vec<EdgeFile>,
    #[serde(default)]
    witnesses: Vec<GlueWitness>,
    bound: u64,
}

/// A diagram input file resolved against the file system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedDiagram {
    pub diagram: Diagram,
    pub witnesses: Vec<GlueWitness>,
    pub bound: u64,
}

/// Load a `.diag.json` file. DSL paths inside it are resolved relative to
/// the file's own directory.
pub fn load_diagram(path: &Path) -> Result<LoadedDiagram, Error> {
    let file: DiagramFile = read_json(path)?;
    if file.bound == 0 {
        return Err(Error::Format {
            path: path.display().to_string(),
            message: "bound must be at least 1".to_owned(),
        });
    }
    let base = path.parent().unwrap_or_else(|| Path::new(""));
    let mut objects = Vec::new();
    let mut node_dsl = BTreeMap::new();
    for object in &file.objects {
        objects.push(object.name.clone());
        node_dsl.insert(object.name.clone(), load_dsl(&resolve(base, &object.dsl))?);
    }
    let mut edges = Vec::new();
    let mut edge_morphism = BTreeMap::new();
    for edge in file.edges {
        let source = node_dsl.get(&edge.from).ok_or_else(|| Error::Format {
            path: path.display().to_string(),
            message: format!("edge {}: unknown source object {}", edge.name, edge.from),
        })?;
        let target = node_dsl.get(&edge.to).ok_or_else(|| Error::Format {
            path: path.display().to_string(),
            message: format!("edge {}: unknown target object {}", edge.name, edge.to),
        })?;
        edge_morphism.insert(
            edge.name.clone(),
            DslMorphism::new(
                source.clone(),
                target.clone(),
                edge.type_map,
                edge.function_map,
            ),
        );
        edges.push(EdgeDecl {
            name: edge.name,
            from: edge.from,
            to: edge.to,
        });
    }
    Ok(LoadedDiagram {
        diagram: Diagram {
            shape: Shape { objects, edges },
            node_dsl,
            edge_morphism,
        },
        witnesses: file.witnesses,
        bound: file.bound,
    })
}

/// Everything a pushout run produced, written as the `.pushout.json`
/// report and read back by universal-property checking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutReportBody {
    pub bound: u64,
    pub span: Span,
    pub witnesses: Vec<GlueWitness>,
    pub safety: ValidationReport,
    pub result: PushoutResult,
}

/// Everything a colimit run produced, written as the `.colimit.json`
/// report and read back by universal-property checking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitReportBody {
    pub bound: u64,
    pub diagram: Diagram,
    pub witnesses: Vec<GlueWitness>,
    pub result: ColimitResult,
}

/// A composition report, tagged by the operation that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CompositionReport {
    Pushout(PushoutReportBody),
    Colimit(ColimitReportBody),
}

/// Load a `.pushout.json` or `.colimit.json` report, dispatching on its
/// `kind` field.
pub fn load_report(path: &Path) -> Result<CompositionReport, Error> {
    read_json(path)
}
