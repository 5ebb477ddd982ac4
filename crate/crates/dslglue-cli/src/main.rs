//! Command-line interface over the dslglue library: validation,
//! evaluation, law checking, gluing, colimits, and universal-property
//! checking, with JSON reports on stdout and a short summary on stderr.
//!
//! Exit codes: 0 for success with an all-clear report, 1 for report-level
//! failures (law counterexamples, invalid inputs to `validate`, safety
//! violations, missing or non-unique mediators), 2 for input errors
//! (unreadable files, parse failures, malformed requests).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use dslglue::files::{to_json_string, write_json};
use dslglue::{
    check_laws, check_safety, colimit, eval_term, load_diagram, load_dsl, load_glue, load_report,
    load_term, pushout, validate_dsl, verify_colimit_universal, verify_universal_property,
    CompositionReport, Error, Value,
};

#[derive(Parser)]
#[command(name = "dslglue", version, about = "Validate, evaluate, and glue DSLs")]
struct Cli {
    /// Suppress the human-readable summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a DSL file and print its validation report.
    Validate {
        /// Path to a .dsl.json file.
        dsl: PathBuf,
    },
    /// Evaluate a term file or a single symbol on literal arguments.
    Eval {
        /// Path to a .dsl.json file.
        dsl: PathBuf,
        /// Path to a .term.json file (mutually exclusive with --symbol).
        #[arg(long)]
        term: Option<PathBuf>,
        /// Name of a function symbol (mutually exclusive with --term).
        #[arg(long)]
        symbol: Option<String>,
        /// Arguments, one per input: JSON literals, with unquoted text
        /// accepted as a string.
        #[arg(long, num_args = 0..)]
        args: Vec<String>,
    },
    /// Check the operad laws exhaustively over bounded carriers.
    Laws {
        /// Path to a .dsl.json file.
        dsl: PathBuf,
        /// Carrier enumeration bound.
        #[arg(long, default_value_t = 3)]
        bound: u64,
        /// Maximum graft depth of enumerated terms.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Glue two DSLs along the span in a glue file.
    Glue {
        /// Path to a .glue.json file.
        glue: PathBuf,
        /// Write the glued DSL here, and the full report next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the colimit of the diagram in a diagram file.
    Colimit {
        /// Path to a .diag.json file.
        diagram: PathBuf,
        /// Write the colimit DSL here, and the full report next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check the universal property of a pushout or colimit report.
    CheckUniversal {
        /// Path to a .pushout.json or .colimit.json report.
        report: PathBuf,
        /// Largest candidate target universe, in sigils (at most 3).
        #[arg(long, default_value_t = 3)]
        max_targets: u64,
    },
}

struct Outcome {
    stdout: String,
    summary: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if !cli.quiet {
                eprintln!("{}", outcome.summary);
            }
            ExitCode::from(u8::from(!outcome.ok))
        }
        Err(error) => {
            print!("{}", error_json(&error));
            if !cli.quiet {
                eprintln!("error: {error}");
            }
            ExitCode::from(if error.is_report_failure() { 1 } else { 2 })
        }
    }
}

fn error_json(error: &Error) -> String {
    let mut object = serde_json::Map::new();
    object.insert("error".to_owned(), json!(error.kind()));
    object.insert("message".to_owned(), json!(error.to_string()));
    match error {
        Error::SafetyViolation(report) | Error::DiagramInvalid(report) => {
            object.insert("report".to_owned(), json!(report));
        }
        Error::MorphismInvalid { side, report } => {
            object.insert("side".to_owned(), json!(side));
            object.insert("report".to_owned(), json!(report));
        }
        _ => {}
    }
    to_json_string(&serde_json::Value::Object(object))
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Validate { dsl } => {
            let dsl = load_dsl(dsl)?;
            let report = validate_dsl(&dsl);
            let summary = if report.ok {
                format!("{}: valid", dsl.name)
            } else {
                format!("{}: {} diagnostics", dsl.name, report.diagnostics.len())
            };
            Ok(Outcome {
                stdout: to_json_string(&report),
                ok: report.ok,
                summary,
            })
        }
        Command::Eval {
            dsl,
            term,
            symbol,
            args,
        } => {
            let path = dsl;
            let dsl = load_dsl(path)?;
            let args = parse_args(path, args)?;
            let (value, label) = match (term, symbol) {
                (Some(term_path), None) => {
                    let term = load_term(term_path)?;
                    let value = eval_term(&dsl, &term, &args)?;
                    (value, term_path.display().to_string())
                }
                (None, Some(name)) => (dsl.eval_action(name, &args)?, name.clone()),
                _ => {
                    return Err(Error::Format {
                        path: path.display().to_string(),
                        message: "exactly one of --term and --symbol is required".to_owned(),
                    })
                }
            };
            Ok(Outcome {
                stdout: format!("{}\n", serde_json::to_string_pretty(&value.to_bare_json()).expect("bare JSON serializes")),
                summary: format!("{label} => {value}"),
                ok: true,
            })
        }
        Command::Laws { dsl, bound, depth } => {
            let dsl = load_dsl(dsl)?;
            let report = check_laws(&dsl, *bound, *depth)?;
            let summary = if report.ok {
                format!("{}: all laws hold (bound {bound}, depth {depth})", dsl.name)
            } else {
                let broken: Vec<&str> = report
                    .axioms
                    .iter()
                    .filter(|a| a.counterexample.is_some())
                    .map(|a| a.axiom.as_str())
                    .collect();
                format!("{}: counterexample in {}", dsl.name, broken.join(", "))
            };
            Ok(Outcome {
                stdout: to_json_string(&report),
                ok: report.ok,
                summary,
            })
        }
        Command::Glue { glue, out } => {
            let loaded = load_glue(glue)?;
            let safety = check_safety(&loaded.span, &loaded.witnesses, loaded.bound)?;
            if !safety.ok {
                return Err(Error::SafetyViolation(safety));
            }
            let result = pushout(&loaded.span, &loaded.witnesses, loaded.bound)?;
            let summary = format!(
                "glued {}: {} type classes, {} symbol classes",
                result.glued.name,
                result.type_classes.len(),
                result.symbol_classes.len()
            );
            let report = CompositionReport::Pushout(dslglue::files::PushoutReportBody {
                bound: loaded.bound,
                span: loaded.span,
                witnesses: loaded.witnesses,
                safety,
                result,
            });
            let summary = write_outputs(&report, out.as_deref(), "pushout", summary)?;
            Ok(Outcome {
                stdout: to_json_string(&report),
                summary,
                ok: true,
            })
        }
        Command::Colimit { diagram, out } => {
            let loaded = load_diagram(diagram)?;
            let result = colimit(&loaded.diagram, &loaded.witnesses, loaded.bound)?;
            let summary = format!(
                "colimit {}: {} type classes, {} symbol classes",
                result.colimit.name,
                result.type_classes.len(),
                result.symbol_classes.len()
            );
            let report = CompositionReport::Colimit(dslglue::files::ColimitReportBody {
                bound: loaded.bound,
                diagram: loaded.diagram,
                witnesses: loaded.witnesses,
                result,
            });
            let summary = write_outputs(&report, out.as_deref(), "colimit", summary)?;
            Ok(Outcome {
                stdout: to_json_string(&report),
                summary,
                ok: true,
            })
        }
        Command::CheckUniversal {
            report,
            max_targets,
        } => {
            let check = match load_report(report)? {
                CompositionReport::Pushout(body) => {
                    verify_universal_property(&body.result, &body.span, *max_targets)?
                }
                CompositionReport::Colimit(body) => {
                    verify_colimit_universal(&body.result, &body.diagram, *max_targets)?
                }
            };
            let summary = if check.ok {
                format!(
                    "universal property holds: {} cocones over {} targets, one mediator each",
                    check.cocones, check.targets
                )
            } else {
                format!("universal property fails: {} defects", check.diagnostics.len())
            };
            Ok(Outcome {
                stdout: to_json_string(&check),
                ok: check.ok,
                summary,
            })
        }
    }
}

/// Each argument is parsed as a JSON literal; anything that is not valid
/// JSON is taken verbatim as a string, so shells need not double-quote.
fn parse_args(path: &Path, raw: &[String]) -> Result<Vec<Value>, Error> {
    raw.iter()
        .map(|text| match serde_json::from_str::<serde_json::Value>(text) {
            Ok(json) => Value::from_bare_json(&json).map_err(|message| Error::Format {
                path: path.display().to_string(),
                message: format!("argument {text}: {message}"),
            }),
            Err(_) => Ok(Value::str(text.as_str())),
        })
        .collect()
}

/// Write the composed DSL to `out` and the full report next to it, using
/// the report-kind suffix. Returns the summary extended with the paths.
fn write_outputs(
    report: &CompositionReport,
    out: Option<&Path>,
    kind: &str,
    summary: String,
) -> Result<String, Error> {
    let Some(out) = out else {
        return Ok(summary);
    };
    let dsl = match report {
        CompositionReport::Pushout(body) => &body.result.glued,
        CompositionReport::Colimit(body) => &body.result.colimit,
    };
    write_json(out, dsl)?;
    let report_path = sibling_report_path(out, kind);
    write_json(&report_path, report)?;
    Ok(format!(
        "{summary}; wrote {} and {}",
        out.display(),
        report_path.display()
    ))
}

/// `foo.dsl.json` becomes `foo.<kind>.json`; other names keep their stem.
fn sibling_report_path(out: &Path, kind: &str) -> PathBuf {
    let name = out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = name
        .strip_suffix(".dsl.json")
        .or_else(|| name.strip_suffix(".json"))
        .unwrap_or(&name);
    out.with_file_name(format!("{stem}.{kind}.json"))
}
