//! Solovay paths: running the recursion under injected derivation events,
//! limits, and the path lemmas checked over every small schedule.
//!
//! Run with `cargo run -p glp --example solovay_paths`.

use glp::kripke::JModel;
use glp::solovay::{
    check_path_properties, enumerate_schedules, limit_value, run_path, schedule_to_json,
    SolovaySchedule,
};

fn main() {
    // A stratified three-world frame with a root on top: 0 is the root,
    // old worlds are 1, 2, 3 with 1 <_2 2 and 1,2 <_1 3.
    let mut base = JModel::new(3, 3);
    base.add_edge(2, 0, 1);
    base.add_edge(1, 0, 2);
    base.add_edge(1, 1, 2);
    let model = base.add_root();

    // Without events the path never leaves the root.
    let empty = SolovaySchedule::new();
    println!("empty schedule:  {}", run_path(&model, &empty, 6).unwrap());

    // An event fires when its target lies below the current world at some
    // level at or above its tag; the path then descends there.
    let mut schedule = SolovaySchedule::new();
    schedule.insert(1, 0, 2);
    schedule.insert(3, 1, 1);
    println!("schedule file:\n{}", schedule_to_json(&schedule));
    let path = run_path(&model, &schedule, 7).unwrap();
    println!("two events:      {path}");
    println!(
        "limit value:     {}",
        limit_value(&model, &schedule).unwrap()
    );

    // A level too high for the frame position makes the event a no-op.
    let mut gated = SolovaySchedule::new();
    gated.insert(0, 2, 3);
    println!("gated event:     {}", run_path(&model, &gated, 4).unwrap());

    // The path lemmas over every schedule with at most two events: runs are
    // prefix-comparable, every length exists, values are unique per index,
    // and the path only descends.
    let schedules = enumerate_schedules(model.relation_count(), model.world_count(), 2, 5);
    let report = check_path_properties(&model, &schedules, 6);
    println!(
        "checked {} schedules / {} runs: {}",
        report.schedules_checked,
        report.runs_checked,
        if report.passed() {
            "all path lemmas hold".to_string()
        } else {
            format!("{} violations", report.violations.len())
        }
    );
}
