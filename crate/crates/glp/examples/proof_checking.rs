//! Hilbert proofs: building derivations, checking them, recognizing axiom
//! schemas, lifting finite-index proofs to transfinite indices, and the
//! black-box Löb rule simulation.
//!
//! Run with `cargo run -p glp --example proof_checking`.

use glp::corpus::{black_box_loeb_simulation, index_shift_proof, transitivity_proof};
use glp::hilbert::{check_proof, lift_proof, proof_to_json, recognize_axiom, CheckResult, System};
use glp::ordinal::parse_ordinal;
use glp::syntax::{parse_formula, CondensationMap};

fn main() {
    // Schema recognition with ordinal side conditions.
    for text in [
        "[w]([w]p -> p) -> [w]p",
        "<w>p -> <1>p",
        "<1>p -> <w>p",
        "<w>p -> [w^w]<w>p",
    ] {
        let f = parse_formula(text).unwrap();
        match recognize_axiom(&f, System::GlpPrec) {
            Some(schema) => println!("{text:24} axiom: {schema}"),
            None => println!("{text:24} not an axiom instance"),
        }
    }

    // The transitivity axiom derived from Löb and distribution.
    println!();
    let trans = transitivity_proof(parse_formula("p").unwrap());
    println!(
        "transitivity derivation: {} lines, {}",
        trans.lines.len(),
        check_proof(&trans)
    );

    // Lifting the whole derivation through a condensation map turns the
    // finite-index proof into a transfinite one, line by line.
    let map = CondensationMap::from_levels(vec![parse_ordinal("w^w").unwrap()]).unwrap();
    let lifted = lift_proof(&trans, &map).unwrap();
    println!("lifted conclusion:       {}", lifted.conclusion().unwrap());
    println!("lifted check:            {}", check_proof(&lifted));

    // Proofs may carry hypotheses; this one derives the Löb rule for the
    // black box from its interaction axioms.
    println!();
    let simulation = black_box_loeb_simulation();
    println!("black-box Löb simulation ({}):", check_proof(&simulation));
    println!("{}", proof_to_json(&simulation));

    // Checking pinpoints the first broken line.
    let mut broken = index_shift_proof();
    broken.lines[2].formula = parse_formula("F").unwrap();
    match check_proof(&broken) {
        CheckResult::Rejected { line, reason } => {
            println!("mutated proof rejected at line {line}: {reason}")
        }
        CheckResult::Accepted => unreachable!("mutation must be caught"),
    }
}
