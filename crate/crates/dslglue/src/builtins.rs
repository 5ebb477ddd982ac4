//! The fixed catalog of builtin operations available to function actions.
//!
//! The action language is first-order over this catalog: every application
//! node in a [`TermExpr`](crate::action::TermExpr) must head a builtin.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::value::{BaseType, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// First `n` characters of a string; the whole string when `n` exceeds
    /// its length.
    TakePrefix,
    /// String identity.
    IdString,
    /// String concatenation.
    Concat,
    /// Character count of a string.
    Length,
    /// Equality of naturals.
    EqNat,
    /// Addition of naturals.
    Add,
    /// Field names of a fieldmap joined by `,` in ascending lexicographic
    /// order.
    FieldsOf,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::TakePrefix,
        Builtin::IdString,
        Builtin::Concat,
        Builtin::Length,
        Builtin::EqNat,
        Builtin::Add,
        Builtin::FieldsOf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::TakePrefix => "take_prefix",
            Builtin::IdString => "id_string",
            Builtin::Concat => "concat",
            Builtin::Length => "length",
            Builtin::EqNat => "eq_nat",
            Builtin::Add => "add",
            Builtin::FieldsOf => "fields_of",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn domain(self) -> &'static [BaseType] {
        match self {
            Builtin::TakePrefix => &[BaseType::Natural, BaseType::String],
            Builtin::IdString => &[BaseType::String],
            Builtin::Concat => &[BaseType::String, BaseType::String],
            Builtin::Length => &[BaseType::String],
            Builtin::EqNat => &[BaseType::Natural, BaseType::Natural],
            Builtin::Add => &[BaseType::Natural, BaseType::Natural],
            Builtin::FieldsOf => &[BaseType::Fieldmap],
        }
    }

    pub fn codomain(self) -> BaseType {
        match self {
            Builtin::TakePrefix | Builtin::IdString | Builtin::Concat | Builtin::FieldsOf => {
                BaseType::String
            }
            Builtin::Length | Builtin::Add => BaseType::Natural,
            Builtin::EqNat => BaseType::Boolean,
        }
    }

    /// Apply the builtin, checking arity and carriers.
    pub fn apply(self, args: &[Value]) -> Result<Value, Error> {
        let domain = self.domain();
        if args.len() != domain.len() {
            return Err(Error::ArityMismatch {
                expected: domain.len(),
                got: args.len(),
            });
        }
        for (index, (arg, expected)) in args.iter().zip(domain).enumerate() {
            if arg.base_type() != *expected {
                return Err(Error::TypeMismatch {
                    index,
                    expected: *expected,
                    got: arg.base_type(),
                });
            }
        }
        Ok(match (self, args) {
            (Builtin::TakePrefix, [Value::Nat(n), Value::Str(s)]) => {
                Value::Str(take_prefix(n, s))
            }
            (Builtin::IdString, [Value::Str(s)]) => Value::Str(s.clone()),
            (Builtin::Concat, [Value::Str(a), Value::Str(b)]) => Value::Str(format!("{a}{b}")),
            (Builtin::Length, [Value::Str(s)]) => Value::Nat(BigUint::from(s.chars().count())),
            (Builtin::EqNat, [Value::Nat(a), Value::Nat(b)]) => Value::Bool(a == b),
            (Builtin::Add, [Value::Nat(a), Value::Nat(b)]) => Value::Nat(a + b),
            (Builtin::FieldsOf, [Value::Map(m)]) => {
                // BTreeMap keys are already in ascending lexicographic order.
                Value::Str(m.keys().cloned().collect::<Vec<_>>().join(","))
            }
            _ => unreachable!("carriers checked above"),
        })
    }
}

fn take_prefix(n: &BigUint, s: &str) -> String {
    let len = s.chars().count();
    if *n >= BigUint::from(len) {
        s.to_string()
    } else {
        let n = n.to_usize().expect("n < len fits in usize");
        s.chars().take(n).collect()
    }
}
