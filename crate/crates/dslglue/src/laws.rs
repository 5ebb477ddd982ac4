//! Exhaustive law checking for the term algebra over a DSL: unit laws, both
//! associativity shapes, and equivariance of grafting under slot
//! relabelings.
//!
//! Terms are compared extensionally: two sides of a law agree when they have
//! equal profiles and evaluate identically on every argument tuple drawn
//! from the bounded carrier enumeration. The quantification domain is the
//! set of graft terms over generators up to a depth cap; the composite laws
//! quantify two depth levels lower so that the composed sides stay within
//! the same cap.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::dsl::Dsl;
use crate::error::Error;
use crate::operad::{eval_term, profile_of, unit_term, OperadTerm, Permutation, Profile};
use crate::value::{enumerate_carrier, BaseType, Value};

/// Hard cap on the number of enumerated terms; grafting grows the term
/// space quadratically per depth level.
const TERM_CAP: usize = 4096;

/// Result of [`check_laws`]: one entry per axiom, each with the number of
/// law instances formed, the number of argument tuples compared, and the
/// first counterexample found, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawReport {
    pub ok: bool,
    pub bound: u64,
    pub depth: usize,
    pub axioms: Vec<AxiomReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomReport {
    pub axiom: String,
    pub instances: u64,
    pub tuples: u64,
    pub status: LawStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Holds,
    Violated,
}

/// A law instance whose two sides disagree: either their profiles differ,
/// or the listed argument tuple evaluates differently on each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub lhs: OperadTerm,
    pub rhs: OperadTerm,
    pub args: Vec<Value>,
    pub lhs_value: Option<Value>,
    pub rhs_value: Option<Value>,
    pub reason: String,
}

/// All well-colored graft terms over the DSL's generators up to `depth`
/// graft nestings, in a deterministic order (by depth, then by outer term,
/// slot, inner term). Unit and permutation nodes are not enumerated; the
/// laws introduce those shapes themselves.
pub fn enumerate_terms(dsl: &Dsl, depth: usize) -> Result<Vec<OperadTerm>, Error> {
    Ok(enumerate_with_profiles(dsl, depth)?
        .into_iter()
        .map(|(term, _)| term)
        .collect())
}

fn enumerate_with_profiles(
    dsl: &Dsl,
    depth: usize,
) -> Result<Vec<(OperadTerm, Profile)>, Error> {
    // levels[d] holds the terms of graft depth exactly d.
    let mut levels: Vec<Vec<(OperadTerm, Profile)>> = Vec::new();
    let mut generators = Vec::new();
    for symbol in &dsl.symbols {
        let term = OperadTerm::Gen(symbol.name.clone());
        let profile = profile_of(dsl, &term)?;
        generators.push((term, profile));
    }
    let mut total = generators.len();
    if total > TERM_CAP {
        return Err(Error::TermSpaceExceeded(TERM_CAP));
    }
    levels.push(generators);

    for d in 1..=depth {
        let mut level = Vec::new();
        // A graft has depth 1 + max(outer depth, inner depth), so depth-d
        // terms pair terms of depth <= d-1 where at least one side has
        // depth exactly d-1. Each (outer, slot, inner) triple is produced
        // exactly once.
        for outer_depth in 0..d {
            for inner_depth in 0..d {
                if outer_depth.max(inner_depth) != d - 1 {
                    continue;
                }
                for (outer, outer_profile) in &levels[outer_depth] {
                    for (inner, inner_profile) in &levels[inner_depth] {
                        for slot in 0..outer_profile.arity() {
                            if outer_profile.inputs[slot] != inner_profile.output {
                                continue;
                            }
                            let mut inputs = outer_profile.inputs.clone();
                            inputs.splice(
                                slot..slot + 1,
                                inner_profile.inputs.iter().cloned(),
                            );
                            let term = OperadTerm::Graft {
                                outer: Box::new(outer.clone()),
                                index: slot,
                                inner: Box::new(inner.clone()),
                            };
                            total += 1;
                            if total > TERM_CAP {
                                return Err(Error::TermSpaceExceeded(TERM_CAP));
                            }
                            level.push((
                                term,
                                Profile {
                                    inputs,
                                    output: outer_profile.output.clone(),
                                },
                            ));
                        }
                    }
                }
            }
        }
        levels.push(level);
    }
    Ok(levels.into_iter().flatten().collect())
}

/// Check all four axiom families by exhaustive evaluation, using the
/// standard term evaluator.
pub fn check_laws(dsl: &Dsl, bound: u64, depth: usize) -> Result<LawReport, Error> {
    check_laws_with(dsl, bound, depth, &eval_term)
}

type EvalFn<'a> = &'a dyn Fn(&Dsl, &OperadTerm, &[Value]) -> Result<Value, Error>;

/// Law checker over a pluggable evaluator, so tests can confirm the checker
/// catches evaluators that violate the laws.
pub(crate) fn check_laws_with(
    dsl: &Dsl,
    bound: u64,
    depth: usize,
    eval: EvalFn,
) -> Result<LawReport, Error> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    let mut carriers = BTreeMap::new();
    for base in BaseType::ALL {
        carriers.insert(base, enumerate_carrier(base, bound)?);
    }
    let full = enumerate_with_profiles(dsl, depth)?;
    let composite_depth = depth.saturating_sub(2);
    let sub = enumerate_with_profiles(dsl, composite_depth)?;

    let mut checker = Checker {
        dsl,
        eval,
        carriers,
    };
    let axioms = vec![
        checker.unit_axiom(&full)?,
        checker.sequential_associativity(&sub)?,
        checker.parallel_associativity(&sub)?,
        checker.equivariance(&sub)?,
    ];
    Ok(LawReport {
        ok: axioms.iter().all(|a| a.status == LawStatus::Holds),
        bound,
        depth,
        axioms,
    })
}

struct Checker<'a> {
    dsl: &'a Dsl,
    eval: EvalFn<'a>,
    carriers: BTreeMap<BaseType, Vec<Value>>,
}

impl Checker<'_> {
    /// Compare two terms extensionally, counting evaluated tuples into
    /// `tuples`. Returns the first disagreement found.
    fn agree(
        &self,
        lhs: &OperadTerm,
        rhs: &OperadTerm,
        tuples: &mut u64,
    ) -> Result<Option<Counterexample>, Error> {
        let lhs_profile = profile_of(self.dsl, lhs)?;
        let rhs_profile = profile_of(self.dsl, rhs)?;
        if lhs_profile != rhs_profile {
            return Ok(Some(Counterexample {
                lhs: lhs.clone(),
                rhs: rhs.clone(),
                args: Vec::new(),
                lhs_value: None,
                rhs_value: None,
                reason: format!(
                    "profiles differ: {:?} vs {:?}",
                    lhs_profile, rhs_profile
                ),
            }));
        }
        let input_carriers: Vec<&Vec<Value>> = lhs_profile
            .inputs
            .iter()
            .map(|sigil| {
                self.dsl
                    .denote_type(sigil)
                    .map(|base| &self.carriers[&base])
            })
            .collect::<Result<_, _>>()?;
        for tuple in input_carriers
            .iter()
            .map(|carrier| carrier.iter())
            .multi_cartesian_product()
        {
            *tuples += 1;
            let args: Vec<Value> = tuple.into_iter().cloned().collect();
            let lhs_value = (self.eval)(self.dsl, lhs, &args)?;
            let rhs_value = (self.eval)(self.dsl, rhs, &args)?;
            if lhs_value != rhs_value {
                return Ok(Some(Counterexample {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                    args,
                    lhs_value: Some(lhs_value),
                    rhs_value: Some(rhs_value),
                    reason: "sides evaluate differently on the listed arguments".to_owned(),
                }));
            }
        }
        // Nullary profiles would yield one empty tuple via the product, but
        // arity is always at least one here.
        Ok(None)
    }

    /// Grafting a unit into any slot, or grafting a term into a unit,
    /// leaves the term unchanged.
    fn unit_axiom(&mut self, terms: &[(OperadTerm, Profile)]) -> Result<AxiomReport, Error> {
        let mut report = AxiomTally::new("unit");
        'outer: for (term, profile) in terms {
            // Left unit: the identity on the output absorbs the term.
            let left = OperadTerm::Graft {
                outer: Box::new(unit_term(profile.output.clone())),
                index: 0,
                inner: Box::new(term.clone()),
            };
            if report.check(self, &left, term)? {
                break 'outer;
            }
            // Right units: the identity grafted into each input slot.
            for (slot, sigil) in profile.inputs.iter().enumerate() {
                let right = OperadTerm::Graft {
                    outer: Box::new(term.clone()),
                    index: slot,
                    inner: Box::new(unit_term(sigil.clone())),
                };
                if report.check(self, &right, term)? {
                    break 'outer;
                }
            }
        }
        Ok(report.finish())
    }

    /// Grafting into a slot introduced by a previous graft equals grafting
    /// the composed inner term: `(f .i g) .(i+j) h = f .i (g .j h)`.
    fn sequential_associativity(
        &mut self,
        terms: &[(OperadTerm, Profile)],
    ) -> Result<AxiomReport, Error> {
        let mut report = AxiomTally::new("sequential-associativity");
        'outer: for (f, pf) in terms {
            for (g, pg) in terms {
                for i in 0..pf.arity() {
                    if pf.inputs[i] != pg.output {
                        continue;
                    }
                    for (h, ph) in terms {
                        for j in 0..pg.arity() {
                            if pg.inputs[j] != ph.output {
                                continue;
                            }
                            let lhs = OperadTerm::Graft {
                                outer: Box::new(OperadTerm::Graft {
                                    outer: Box::new(f.clone()),
                                    index: i,
                                    inner: Box::new(g.clone()),
                                }),
                                index: i + j,
                                inner: Box::new(h.clone()),
                            };
                            let rhs = OperadTerm::Graft {
                                outer: Box::new(f.clone()),
                                index: i,
                                inner: Box::new(OperadTerm::Graft {
                                    outer: Box::new(g.clone()),
                                    index: j,
                                    inner: Box::new(h.clone()),
                                }),
                            };
                            if report.check(self, &lhs, &rhs)? {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        Ok(report.finish())
    }

    /// Grafting into two distinct slots commutes once indices are shifted
    /// past the first insertion: `(f .i g) .(k+m-1) h = (f .k h) .i g` for
    /// `i < k`, where `m` is the arity of `g`.
    fn parallel_associativity(
        &mut self,
        terms: &[(OperadTerm, Profile)],
    ) -> Result<AxiomReport, Error> {
        let mut report = AxiomTally::new("parallel-associativity");
        'outer: for (f, pf) in terms {
            for i in 0..pf.arity() {
                for k in i + 1..pf.arity() {
                    for (g, pg) in terms {
                        if pf.inputs[i] != pg.output {
                            continue;
                        }
                        for (h, ph) in terms {
                            if pf.inputs[k] != ph.output {
                                continue;
                            }
                            let m = pg.arity();
                            let lhs = OperadTerm::Graft {
                                outer: Box::new(OperadTerm::Graft {
                                    outer: Box::new(f.clone()),
                                    index: i,
                                    inner: Box::new(g.clone()),
                                }),
                                index: k + m - 1,
                                inner: Box::new(h.clone()),
                            };
                            let rhs = OperadTerm::Graft {
                                outer: Box::new(OperadTerm::Graft {
                                    outer: Box::new(f.clone()),
                                    index: k,
                                    inner: Box::new(h.clone()),
                                }),
                                index: i,
                                inner: Box::new(g.clone()),
                            };
                            if report.check(self, &lhs, &rhs)? {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        Ok(report.finish())
    }

    /// Slot relabelings commute with grafting, on both the outer and the
    /// inner side, up to the induced relabeling of the composite.
    fn equivariance(&mut self, terms: &[(OperadTerm, Profile)]) -> Result<AxiomReport, Error> {
        let mut report = AxiomTally::new("equivariance");
        'outer: for (f, pf) in terms {
            let n = pf.arity();
            for (g, pg) in terms {
                let m = pg.arity();
                // Inner relabeling: permuting g's slots before grafting
                // equals permuting the corresponding block of the
                // composite.
                for i in 0..n {
                    if pf.inputs[i] != pg.output {
                        continue;
                    }
                    for tau in Permutation::all(m) {
                        let lhs = OperadTerm::Graft {
                            outer: Box::new(f.clone()),
                            index: i,
                            inner: Box::new(OperadTerm::Perm {
                                base: Box::new(g.clone()),
                                images: tau.clone(),
                            }),
                        };
                        let rhs = OperadTerm::Perm {
                            base: Box::new(OperadTerm::Graft {
                                outer: Box::new(f.clone()),
                                index: i,
                                inner: Box::new(g.clone()),
                            }),
                            images: block_lift(&tau, i, n + m - 1),
                        };
                        if report.check(self, &lhs, &rhs)? {
                            break 'outer;
                        }
                    }
                }
                // Outer relabeling: grafting into slot i of a relabeled f
                // targets slot sigma(i) of f, and the composite is a
                // relabeling of the direct graft.
                for sigma in Permutation::all(n) {
                    for i in 0..n {
                        if pf.inputs[sigma.apply(i)] != pg.output {
                            continue;
                        }
                        let lhs = OperadTerm::Graft {
                            outer: Box::new(OperadTerm::Perm {
                                base: Box::new(f.clone()),
                                images: sigma.clone(),
                            }),
                            index: i,
                            inner: Box::new(g.clone()),
                        };
                        let rhs = OperadTerm::Perm {
                            base: Box::new(OperadTerm::Graft {
                                outer: Box::new(f.clone()),
                                index: sigma.apply(i),
                                inner: Box::new(g.clone()),
                            }),
                            images: outer_witness(&sigma, i, m),
                        };
                        if report.check(self, &lhs, &rhs)? {
                            break 'outer;
                        }
                    }
                }
            }
        }
        Ok(report.finish())
    }
}

/// Extend a permutation of `0..m` to one of `0..total` acting on the block
/// starting at `offset` and fixing everything else.
fn block_lift(tau: &Permutation, offset: usize, total: usize) -> Permutation {
    let mut images: Vec<usize> = (0..total).collect();
    for k in 0..tau.len() {
        images[offset + k] = offset + tau.apply(k);
    }
    Permutation(images)
}

/// The relabeling of `graft(f, sigma(i), g)` that matches
/// `graft(perm(f, sigma), i, g)`: slots outside the inserted block follow
/// `sigma` with positions past the insertion shifted by the block width,
/// and the block itself maps onto the slots inserted at `sigma(i)`.
fn outer_witness(sigma: &Permutation, i: usize, m: usize) -> Permutation {
    let n = sigma.len();
    let j = sigma.apply(i);
    let shift = |p: usize| if p < j { p } else { p + m - 1 };
    let mut images = Vec::with_capacity(n + m - 1);
    for k in 0..i {
        images.push(shift(sigma.apply(k)));
    }
    for k in 0..m {
        images.push(j + k);
    }
    for k in i + m..n + m - 1 {
        images.push(shift(sigma.apply(k - m + 1)));
    }
    Permutation(images)
}

/// Per-axiom instance and tuple counters with first-counterexample
/// short-circuiting.
struct AxiomTally {
    axiom: &'static str,
    instances: u64,
    tuples: u64,
    counterexample: Option<Counterexample>,
}

impl AxiomTally {
    fn new(axiom: &'static str) -> AxiomTally {
        AxiomTally {
            axiom,
            instances: 0,
            tuples: 0,
            counterexample: None,
        }
    }

    /// Check one law instance; returns true when a counterexample was found
    /// and the axiom loop should stop.
    fn check(
        &mut self,
        checker: &Checker<'_>,
        lhs: &OperadTerm,
        rhs: &OperadTerm,
    ) -> Result<bool, Error> {
        self.instances += 1;
        match checker.agree(lhs, rhs, &mut self.tuples)? {
            Some(counterexample) => {
                self.counterexample = Some(counterexample);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn finish(self) -> AxiomReport {
        AxiomReport {
            axiom: self.axiom.to_owned(),
            instances: self.instances,
            tuples: self.tuples,
            status: if self.counterexample.is_some() {
                LawStatus::Violated
            } else {
                LawStatus::Holds
            },
            counterexample: self.counterexample,
        }
    }
}
