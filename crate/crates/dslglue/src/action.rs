//! The first-order action language that gives function symbols executable
//! bodies: builtin references, argument projections, literals, and
//! application nodes.

use serde::{Deserialize, Serialize};

use crate::builtins::Builtin;
use crate::error::Error;
use crate::value::{BaseType, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum TermExpr {
    /// Reference to a catalog builtin by name. Must appear as the head of an
    /// application node.
    Builtin(String),
    /// Projection of the i-th argument of the enclosing symbol.
    Arg(usize),
    /// Literal value.
    Lit(Value),
    /// Application of a builtin head to ordered arguments.
    Apply {
        head: Box<TermExpr>,
        args: Vec<TermExpr>,
    },
}

impl TermExpr {
    pub fn builtin(name: impl Into<String>) -> TermExpr {
        TermExpr::Builtin(name.into())
    }

    pub fn arg(index: usize) -> TermExpr {
        TermExpr::Arg(index)
    }

    pub fn lit(value: Value) -> TermExpr {
        TermExpr::Lit(value)
    }

    pub fn apply(head: TermExpr, args: Vec<TermExpr>) -> TermExpr {
        TermExpr::Apply {
            head: Box::new(head),
            args,
        }
    }

    /// Shorthand for the common case: a builtin applied to projections of
    /// the first `arity` arguments in order.
    pub fn builtin_on_args(name: &str, arity: usize) -> TermExpr {
        TermExpr::apply(
            TermExpr::builtin(name),
            (0..arity).map(TermExpr::arg).collect(),
        )
    }

    /// Infer the base type of the expression given the base types of the
    /// enclosing symbol's arguments.
    pub fn infer_type(&self, domain: &[BaseType]) -> Result<BaseType, Error> {
        match self {
            TermExpr::Builtin(name) => Err(Error::IllTypedAction(format!(
                "builtin {name} must be applied to arguments"
            ))),
            TermExpr::Arg(index) => domain.get(*index).copied().ok_or_else(|| {
                Error::IllTypedAction(format!(
                    "argument projection {index} out of range for arity {}",
                    domain.len()
                ))
            }),
            TermExpr::Lit(value) => Ok(value.base_type()),
            TermExpr::Apply { head, args } => {
                let builtin = match head.as_ref() {
                    TermExpr::Builtin(name) => Builtin::from_name(name)
                        .ok_or_else(|| Error::UnknownBuiltin(name.clone()))?,
                    other => {
                        return Err(Error::IllTypedAction(format!(
                            "application head must be a builtin reference, got {other:?}"
                        )))
                    }
                };
                let expected = builtin.domain();
                if args.len() != expected.len() {
                    return Err(Error::IllTypedAction(format!(
                        "builtin {} expects {} arguments, got {}",
                        builtin.name(),
                        expected.len(),
                        args.len()
                    )));
                }
                for (index, (arg, want)) in args.iter().zip(expected).enumerate() {
                    let got = arg.infer_type(domain)?;
                    if got != *want {
                        return Err(Error::IllTypedAction(format!(
                            "argument {index} of builtin {} has type {got}, expected {want}",
                            builtin.name()
                        )));
                    }
                }
                Ok(builtin.codomain())
            }
        }
    }

    /// Evaluate with the given argument values bound to projections.
    /// Structural, total, and deterministic on expressions that type-check.
    pub fn eval(&self, args: &[Value]) -> Result<Value, Error> {
        match self {
            TermExpr::Builtin(name) => Err(Error::IllTypedAction(format!(
                "builtin {name} must be applied to arguments"
            ))),
            TermExpr::Arg(index) => args.get(*index).cloned().ok_or_else(|| {
                Error::IllTypedAction(format!(
                    "argument projection {index} out of range for arity {}",
                    args.len()
                ))
            }),
            TermExpr::Lit(value) => Ok(value.clone()),
            TermExpr::Apply { head, args: exprs } => {
                let builtin = match head.as_ref() {
                    TermExpr::Builtin(name) => Builtin::from_name(name)
                        .ok_or_else(|| Error::UnknownBuiltin(name.clone()))?,
                    other => {
                        return Err(Error::IllTypedAction(format!(
                            "application head must be a builtin reference, got {other:?}"
                        )))
                    }
                };
                let values = exprs
                    .iter()
                    .map(|e| e.eval(args))
                    .collect::<Result<Vec<_>, _>>()?;
                builtin.apply(&values)
            }
        }
    }
}
