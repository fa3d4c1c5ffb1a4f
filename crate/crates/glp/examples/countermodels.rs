//! The decision pipeline: certifying theorems through axiom recognition and
//! corpus proofs, refuting non-theorems with verified finite countermodels,
//! and reporting exhausted bounds honestly.
//!
//! Run with `cargo run -p glp --example countermodels`.

use glp::decide::{
    decide, find_countermodel, outcome_to_json, verify_outcome, DecideOptions, DecisionOutcome,
    ProofCorpus, TheoremEvidence,
};
use glp::kripke::model_to_json;
use glp::syntax::{condense, parse_formula};

fn main() {
    let corpus = ProofCorpus::builtin();
    let options = DecideOptions::default();

    let inputs = [
        "[w]([w]p -> p) -> [w]p", // Löb instance: axiom certificate
        "[w]q -> [w][w]q",        // transitivity: lifted corpus proof
        "<0>T",                   // refuted on a single world
        "[1]p -> [0]p",           // monotonicity the weak logic lacks
        "~<1>T",                  // consistency of the diamond
        "[0](p -> p)",            // true but not certified: Unknown
    ];
    for text in inputs {
        let f = parse_formula(text).unwrap();
        let outcome = decide(&f, &corpus, &options);
        let verified = verify_outcome(&outcome, &f);
        match &outcome {
            DecisionOutcome::Theorem {
                evidence: TheoremEvidence::AxiomInstance { schema },
            } => println!("{text:24} Theorem (axiom {schema}), verified {verified}"),
            DecisionOutcome::Theorem {
                evidence: TheoremEvidence::Proof(proof),
            } => println!(
                "{text:24} Theorem (proof, {} lines), verified {verified}",
                proof.lines.len()
            ),
            DecisionOutcome::NonTheorem { model, world } => println!(
                "{text:24} NonTheorem (witness {world} of {} worlds), verified {verified}",
                model.world_count()
            ),
            DecisionOutcome::Unknown { max_worlds } => {
                println!("{text:24} Unknown (searched {max_worlds} worlds)")
            }
        }
    }

    // The search target is the relativized negation on the condensation;
    // the evidence re-verifies by evaluation.
    println!();
    let f = parse_formula("[1]p -> [0]p").unwrap();
    let (g, map) = condense(&f);
    println!("condensation of {f}: {g} with map {map}");
    let (model, world) = find_countermodel(&g, &options)
        .expect("finite indices")
        .expect("refutable");
    println!("countermodel witness world {world}:");
    println!("{}", model_to_json(&model));
    println!();
    let outcome = decide(&f, &corpus, &options);
    println!("full outcome record:\n{}", outcome_to_json(&outcome));
}
