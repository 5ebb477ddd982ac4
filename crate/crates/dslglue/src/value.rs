//! The fixed base-type catalog and its run-time carriers.
//!
//! Every type sigil in a universe denotes one of exactly five base types.
//! Keeping the catalog closed is what makes exhaustive law checking
//! decidable: each carrier can be enumerated up to a bound, and the
//! enumeration order is frozen so reports and counterexamples are
//! reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The closed catalog of base types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseType {
    Boolean,
    Natural,
    String,
    Unit,
    Fieldmap,
}

impl BaseType {
    pub const ALL: [BaseType; 5] = [
        BaseType::Boolean,
        BaseType::Natural,
        BaseType::String,
        BaseType::Unit,
        BaseType::Fieldmap,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BaseType::Boolean => "boolean",
            BaseType::Natural => "natural",
            BaseType::String => "string",
            BaseType::Unit => "unit",
            BaseType::Fieldmap => "fieldmap",
        }
    }
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A run-time datum inhabiting exactly one base-type carrier.
///
/// Naturals are unbounded. Fieldmap equality is order-insensitive because
/// the fields live in a sorted map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Bool(bool),
    Nat(BigUint),
    Str(String),
    Unit,
    Map(BTreeMap<String, String>),
}

impl Value {
    pub fn nat(n: u64) -> Value {
        Value::Nat(BigUint::from(n))
    }

    pub fn str(s: impl Into<String>) -> Value {
        Value::Str(s.into())
    }

    pub fn base_type(&self) -> BaseType {
        match self {
            Value::Bool(_) => BaseType::Boolean,
            Value::Nat(_) => BaseType::Natural,
            Value::Str(_) => BaseType::String,
            Value::Unit => BaseType::Unit,
            Value::Map(_) => BaseType::Fieldmap,
        }
    }

    /// Bare JSON form: each carrier maps to a distinct JSON kind, so the
    /// representation is unambiguous without a tag. boolean -> bool,
    /// natural -> number, string -> string, unit -> null, fieldmap -> object.
    pub fn to_bare_json(&self) -> serde_json::Value {
        match self {
            Value::Bool(b) => serde_json::Value::Bool(*b),
            Value::Nat(n) => serde_json::Value::Number(number_from_biguint(n)),
            Value::Str(s) => serde_json::Value::String(s.clone()),
            Value::Unit => serde_json::Value::Null,
            Value::Map(m) => serde_json::Value::Object(
                m.iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect(),
            ),
        }
    }

    /// Parse the bare JSON form back. JSON arrays have no carrier and are
    /// rejected; numbers must be non-negative integers.
    pub fn from_bare_json(json: &serde_json::Value) -> Result<Value, String> {
        match json {
            serde_json::Value::Bool(b) => Ok(Value::Bool(*b)),
            serde_json::Value::Number(n) => biguint_from_number(n).map(Value::Nat),
            serde_json::Value::String(s) => Ok(Value::Str(s.clone())),
            serde_json::Value::Null => Ok(Value::Unit),
            serde_json::Value::Object(fields) => {
                let mut map = BTreeMap::new();
                for (k, v) in fields {
                    match v {
                        serde_json::Value::String(s) => {
                            map.insert(k.clone(), s.clone());
                        }
                        other => {
                            return Err(format!(
                                "fieldmap value for field {k} must be a string, got {other}"
                            ))
                        }
                    }
                }
                Ok(Value::Map(map))
            }
            serde_json::Value::Array(_) => Err("arrays denote no base-type carrier".to_string()),
        }
    }

    /// Tagged JSON form used by literals in `.dsl.json` files:
    /// `{"base": <tag>, "value": <bare form>}`.
    pub fn to_tagged_json(&self) -> serde_json::Value {
        serde_json::json!({ "base": self.base_type().tag(), "value": self.to_bare_json() })
    }

    pub fn from_tagged(base: BaseType, json: &serde_json::Value) -> Result<Value, String> {
        let value = Value::from_bare_json(json)?;
        if value.base_type() != base {
            return Err(format!(
                "literal tagged {base} but its value inhabits {}",
                value.base_type()
            ));
        }
        Ok(value)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bare_json())
    }
}

fn number_from_biguint(n: &BigUint) -> serde_json::Number {
    // Round-trips through the decimal string; with arbitrary-precision
    // numbers enabled this never loses digits.
    serde_json::from_str(&n.to_string()).expect("decimal digits form a JSON number")
}

fn biguint_from_number(n: &serde_json::Number) -> Result<BigUint, String> {
    BigUint::from_str(&n.to_string())
        .map_err(|_| format!("{n} is not a non-negative integer natural"))
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_tagged_json().serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TaggedRepr {
    base: BaseType,
    value: serde_json::Value,
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Value, D::Error> {
        let repr = TaggedRepr::deserialize(deserializer)?;
        Value::from_tagged(repr.base, &repr.value).map_err(D::Error::custom)
    }
}

/// Deterministic, duplicate-free enumeration of a carrier up to `bound`.
///
/// * boolean: `[false, true]`, constant in the bound
/// * unit: `[()]`, constant in the bound
/// * natural: `0..bound-1`; `enumerate_carrier(natural, b)` is a prefix of
///   any enumeration at a larger bound
/// * string: all strings over the alphabet `{a, b}` of length `< min(bound, 4)`
///   in shortlex order
/// * fieldmap: all maps with field names drawn from `{f, g}` and values from
///   `{"", "a"}` with at most `min(bound, 2)` fields; field-name subsets are
///   ordered by size then lexicographically, and within a subset the value
///   assignments vary the last field fastest
pub fn enumerate_carrier(base: BaseType, bound: u64) -> Result<Vec<Value>, Error> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    Ok(match base {
        BaseType::Boolean => vec![Value::Bool(false), Value::Bool(true)],
        BaseType::Unit => vec![Value::Unit],
        BaseType::Natural => (0..bound).map(Value::nat).collect(),
        BaseType::String => {
            let max_len = bound.min(4) as u32;
            let mut out = Vec::new();
            for len in 0..max_len {
                for combo in 0..(1u32 << len) {
                    let s: String = (0..len)
                        .map(|pos| {
                            let bit = (combo >> (len - 1 - pos)) & 1;
                            if bit == 0 {
                                'a'
                            } else {
                                'b'
                            }
                        })
                        .collect();
                    out.push(Value::Str(s));
                }
            }
            out
        }
        BaseType::Fieldmap => {
            let max_fields = bound.min(2) as usize;
            let values = ["", "a"];
            let subsets: [&[&str]; 4] = [&[], &["f"], &["g"], &["f", "g"]];
            let mut out = Vec::new();
            for subset in subsets.iter().filter(|s| s.len() <= max_fields) {
                let mut assignment = vec![0usize; subset.len()];
                loop {
                    let map: BTreeMap<String, String> = subset
                        .iter()
                        .zip(&assignment)
                        .map(|(name, &v)| (name.to_string(), values[v].to_string()))
                        .collect();
                    out.push(Value::Map(map));
                    // advance the last field fastest
                    let mut pos = subset.len();
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        assignment[pos] += 1;
                        if assignment[pos] < values.len() {
                            break;
                        }
                        assignment[pos] = 0;
                    }
                    if assignment.iter().all(|&v| v == 0) {
                        break;
                    }
                }
            }
            out
        }
    })
}
