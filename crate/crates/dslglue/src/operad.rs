//! Colored terms over a DSL: units, generators, grafting, and permutation
//! actions, with profiles tracking input and output sigils.
//!
//! Evaluation interprets a term as a function between denoted carriers. A
//! graft feeds the inner term's result into one slot of the outer term:
//!
//! ```text
//! eval(graft(f, i, g), x_0, .., x_{i-1}, y_0, .., y_{m-1}, x_{i+1}, ..)
//!   = eval(f, x_0, .., x_{i-1}, eval(g, y_0, .., y_{m-1}), x_{i+1}, ..)
//! ```
//!
//! A permutation node relabels input slots: slot `k` of `perm(t, p)` is slot
//! `p[k]` of `t`, and evaluation reorders its arguments accordingly.

use serde::{Deserialize, Serialize};

use crate::dsl::{Dsl, Sigil, SymbolName};
use crate::error::Error;
use crate::value::Value;

/// Input sigils and output sigil of a term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Profile {
    pub inputs: Vec<Sigil>,
    pub output: Sigil,
}

impl Profile {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

/// A permutation of `0..n`, stored as its image list: `p[k]` is where slot
/// `k` looks in the underlying term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    /// Validate that `images` is a bijection on `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Permutation, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &image in &images {
            if image >= n || seen[image] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[image] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &image)| k == image)
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.0.len()];
        for (k, &image) in self.0.iter().enumerate() {
            images[image] = k;
        }
        Permutation(images)
    }

    /// Composition `self . other`: first look up through `other`, then
    /// through `self`, so `(self.compose(other)).apply(k) ==
    /// self.apply(other.apply(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    /// `out[k] = items[self[k]]`: the slot relabeling this permutation
    /// performs on any per-slot list.
    pub fn reorder<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(self.len(), items.len(), "reordering a list of the wrong length");
        self.0.iter().map(|&k| items[k].clone()).collect()
    }

    /// All permutations of `0..n` in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images = (0..n).collect::<Vec<_>>();
        loop {
            out.push(Permutation(images.clone()));
            // Next lexicographic permutation, or stop after the last one.
            let Some(pivot) = images.windows(2).rposition(|w| w[0] < w[1]) else {
                break;
            };
            let successor = images.iter().rposition(|&x| x > images[pivot]).unwrap();
            images.swap(pivot, successor);
            images[pivot + 1..].reverse();
        }
        out
    }
}

/// A term of the operad built over a DSL.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum OperadTerm {
    /// Identity term on one sigil: profile `(c; [c])`, evaluates to its
    /// argument.
    Unit(Sigil),
    /// A function symbol of the DSL, with the symbol's signature as profile.
    Gen(SymbolName),
    /// `inner` grafted into input slot `i` of `outer`.
    Graft {
        outer: Box<OperadTerm>,
        #[serde(rename = "i")]
        index: usize,
        inner: Box<OperadTerm>,
    },
    /// Slot relabeling: slot `k` of the result is slot `images[k]` of
    /// `base`.
    Perm {
        base: Box<OperadTerm>,
        images: Permutation,
    },
}

impl OperadTerm {
    pub fn gen(name: impl Into<SymbolName>) -> OperadTerm {
        OperadTerm::Gen(name.into())
    }
}

/// The identity term on `sigil`.
pub fn unit_term(sigil: impl Into<Sigil>) -> OperadTerm {
    OperadTerm::Unit(sigil.into())
}

/// Compute the profile of a term, validating it against the DSL on the way:
/// sigils and generators must exist, graft indices must be in range, graft
/// colors must match, and permutation images must be bijections of the
/// right size.
pub fn profile_of(dsl: &Dsl, term: &OperadTerm) -> Result<Profile, Error> {
    match term {
        OperadTerm::Unit(sigil) => {
            if !dsl.universe.contains(sigil.as_str()) {
                return Err(Error::UnknownSigil(sigil.clone()));
            }
            Ok(Profile {
                inputs: vec![sigil.clone()],
                output: sigil.clone(),
            })
        }
        OperadTerm::Gen(name) => {
            let symbol = dsl
                .symbol(name.as_str())
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            Ok(Profile {
                inputs: symbol.signature.domain.clone(),
                output: symbol.signature.codomain.clone(),
            })
        }
        OperadTerm::Graft {
            outer,
            index,
            inner,
        } => {
            let outer_profile = profile_of(dsl, outer)?;
            let inner_profile = profile_of(dsl, inner)?;
            if *index >= outer_profile.arity() {
                return Err(Error::IndexOutOfRange {
                    index: *index,
                    arity: outer_profile.arity(),
                });
            }
            let slot = &outer_profile.inputs[*index];
            if *slot != inner_profile.output {
                return Err(Error::ColorMismatch {
                    index: *index,
                    expected: slot.clone(),
                    got: inner_profile.output,
                });
            }
            let mut inputs = outer_profile.inputs;
            inputs.splice(index..&(index + 1), inner_profile.inputs);
            Ok(Profile {
                inputs,
                output: outer_profile.output,
            })
        }
        OperadTerm::Perm { base, images } => {
            let base_profile = profile_of(dsl, base)?;
            let perm = Permutation::new(images.0.clone())?;
            if perm.len() != base_profile.arity() {
                return Err(Error::SizeMismatch {
                    arity: base_profile.arity(),
                    len: perm.len(),
                });
            }
            Ok(Profile {
                inputs: perm.reorder(&base_profile.inputs),
                output: base_profile.output,
            })
        }
    }
}

/// Graft `inner` into input slot `index` of `outer`, checking the slot
/// exists and its sigil matches the inner term's output sigil.
pub fn graft(
    dsl: &Dsl,
    outer: OperadTerm,
    index: usize,
    inner: OperadTerm,
) -> Result<OperadTerm, Error> {
    let term = OperadTerm::Graft {
        outer: Box::new(outer),
        index,
        inner: Box::new(inner),
    };
    profile_of(dsl, &term)?;
    Ok(term)
}

/// Relabel the input slots of `base` by a permutation, checking the image
/// list is a bijection of the term's arity.
pub fn permute_term(
    dsl: &Dsl,
    base: OperadTerm,
    images: Permutation,
) -> Result<OperadTerm, Error> {
    let term = OperadTerm::Perm {
        base: Box::new(base),
        images,
    };
    profile_of(dsl, &term)?;
    Ok(term)
}

/// Evaluate a term on argument values drawn from the denoted input
/// carriers.
pub fn eval_term(dsl: &Dsl, term: &OperadTerm, args: &[Value]) -> Result<Value, Error> {
    let profile = profile_of(dsl, term)?;
    if args.len() != profile.arity() {
        return Err(Error::ArityMismatch {
            expected: profile.arity(),
            got: args.len(),
        });
    }
    for (index, (arg, sigil)) in args.iter().zip(&profile.inputs).enumerate() {
        let expected = dsl.denote_type(sigil)?;
        if arg.base_type() != expected {
            return Err(Error::TypeMismatch {
                index,
                expected,
                got: arg.base_type(),
            });
        }
    }
    eval_checked(dsl, term, args)
}

// Recursive evaluator. `profile_of` has already validated the whole tree,
// so per-node lookups cannot fail; argument lists are re-split at each
// graft.
fn eval_checked(dsl: &Dsl, term: &OperadTerm, args: &[Value]) -> Result<Value, Error> {
    match term {
        OperadTerm::Unit(_) => Ok(args[0].clone()),
        OperadTerm::Gen(name) => dsl.eval_action(name.as_str(), args),
        OperadTerm::Graft {
            outer,
            index,
            inner,
        } => {
            let m = profile_of(dsl, inner)?.arity();
            let inner_value = eval_checked(dsl, inner, &args[*index..*index + m])?;
            let mut outer_args = Vec::with_capacity(args.len() - m + 1);
            outer_args.extend_from_slice(&args[..*index]);
            outer_args.push(inner_value);
            outer_args.extend_from_slice(&args[*index + m..]);
            eval_checked(dsl, outer, &outer_args)
        }
        OperadTerm::Perm { base, images } => {
            eval_checked(dsl, base, &images.inverse().reorder(args))
        }
    }
}
