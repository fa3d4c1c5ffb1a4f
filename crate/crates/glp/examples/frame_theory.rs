//! Frame machinery: validating the frame conditions, derived relations and
//! class partitions, stratification witnesses, root adjunction, model
//! checking, and exhaustive enumeration of small valid frames.
//!
//! Run with `cargo run -p glp --example frame_theory`.

use glp::kripke::{enumerate_frames, enumerate_models, model_to_json, JModel};
use glp::syntax::parse_formula;

fn main() {
    // Worlds a=0, b=1, c=2 with a <_2 b and a <_1 c: a valid frame that is
    // not stratified, because b's class at level 2 sits below c's without
    // the pointwise edge b <_1 c.
    let mut frame = JModel::new(3, 3);
    frame.add_edge(2, 0, 1);
    frame.add_edge(1, 0, 2);
    let report = frame.validate_j_frame();
    println!(
        "J-frame: {}, stratified: {}",
        report.is_j_frame, report.is_stratified
    );
    for v in &report.violations {
        println!("  {} witness {:?}", v.condition, v.witness);
    }

    // Adding the missing edge restores stratification.
    frame.add_edge(1, 1, 2);
    println!(
        "after adding b <_1 c: stratified = {}",
        frame.is_stratified()
    );

    // Derived relations: the union above a level, and the class partition.
    let ll1: Vec<Vec<usize>> = (0..3)
        .map(|w| glp::kripke::worlds_in(frame.ll_below(1)[w]).collect())
        .collect();
    println!("below under >>_1 per world: {ll1:?}");
    println!(
        "classes at level 2: {:?}",
        frame.approx_partition(2).classes()
    );

    // A root sees every old world through relation 0 and keeps validity.
    let rooted = frame.add_root();
    println!(
        "rooted: {} worlds, valid: {}",
        rooted.world_count(),
        rooted.validate_j_frame().is_j_frame
    );

    // Model checking with a valuation.
    let mut model = frame.clone();
    model.set_true("p", 0);
    let f = parse_formula("<1>p").unwrap();
    let sat: Vec<usize> = glp::kripke::worlds_in(model.eval(&f).unwrap()).collect();
    println!("worlds satisfying {f}: {sat:?}");
    println!("model file:\n{}", model_to_json(&model));

    // Exhaustive enumeration of valid frames at desk scale.
    let total = enumerate_frames(3, 2, false).count();
    let stratified = enumerate_frames(3, 2, true).count();
    println!("valid frames up to 3 worlds, 2 relations: {total} ({stratified} stratified)");
    let with_vals = enumerate_models(2, 2, &["p".to_string()], false).count();
    println!("with p-valuations up to 2 worlds: {with_vals}");
}
