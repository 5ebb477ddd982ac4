//! Grafted-term evaluation checked against an independently hand-rolled
//! substitution formula: evaluate the inner symbol's action on its block
//! of arguments, splice the result into the outer argument list, and
//! evaluate the outer symbol's action. No operad-term machinery is used
//! on the oracle side.

use std::path::{Path, PathBuf};

use dslglue::{enumerate_carrier, eval_term, graft, load_dsl, Dsl, OperadTerm, Value};
use itertools::Itertools;

fn sample(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../samples")
        .join(name)
}

fn carrier_tuples(dsl: &Dsl, inputs: &[dslglue::Sigil], bound: u64) -> Vec<Vec<Value>> {
    let carriers: Vec<Vec<Value>> = inputs
        .iter()
        .map(|sigil| enumerate_carrier(dsl.denote_type(sigil).unwrap(), bound).unwrap())
        .collect();
    carriers
        .iter()
        .map(|c| c.iter().cloned())
        .multi_cartesian_product()
        .collect()
}

#[test]
fn grafts_agree_with_direct_substitution_on_all_generator_pairs() {
    let bound = 3;
    let mut instances = 0u64;
    let mut tuples = 0u64;
    for dsl_file in ["dslu.dsl.json", "dslp.dsl.json"] {
        let dsl = load_dsl(&sample(dsl_file)).unwrap();
        for outer in &dsl.symbols {
            for inner in &dsl.symbols {
                for slot in 0..outer.arity() {
                    if outer.signature.domain[slot] != inner.signature.codomain {
                        continue;
                    }
                    instances += 1;
                    let term = graft(
                        &dsl,
                        OperadTerm::gen(outer.name.as_str()),
                        slot,
                        OperadTerm::gen(inner.name.as_str()),
                    )
                    .unwrap();
                    let spliced_inputs: Vec<dslglue::Sigil> = outer.signature.domain[..slot]
                        .iter()
                        .chain(&inner.signature.domain)
                        .chain(&outer.signature.domain[slot + 1..])
                        .cloned()
                        .collect();
                    for args in carrier_tuples(&dsl, &spliced_inputs, bound) {
                        tuples += 1;
                        let via_term = eval_term(&dsl, &term, &args).unwrap();

                        let inner_args = &args[slot..slot + inner.arity()];
                        let inner_value =
                            dsl.eval_action(inner.name.as_str(), inner_args).unwrap();
                        let outer_args: Vec<Value> = args[..slot]
                            .iter()
                            .cloned()
                            .chain(std::iter::once(inner_value))
                            .chain(args[slot + inner.arity()..].iter().cloned())
                            .collect();
                        let via_formula =
                            dsl.eval_action(outer.name.as_str(), &outer_args).unwrap();

                        assert_eq!(
                            via_term, via_formula,
                            "{dsl_file}: {} grafted with {} at {slot} diverges on {args:?}",
                            outer.name, inner.name
                        );
                    }
                }
            }
        }
    }
    // dslu admits fprint@1{fprint, finput}, finput@0{fprint, finput};
    // dslp admits fprint@1{ffields, fprint}. Carrier sizes at bound 3 are
    // 3 naturals, 7 strings, 9 fieldmaps, so the tuple total is
    // 63 + 21 + 21 + 7 + 27 + 63.
    assert_eq!(instances, 6);
    assert_eq!(tuples, 202);
}
