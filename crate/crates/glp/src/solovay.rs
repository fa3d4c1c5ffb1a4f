//! A combinatorial simulation of the Solovay-style path recursion, with
//! the arithmetic self-reference factored out.
//!
//! A schedule injects the stream of derivation events that arithmetic
//! self-reference would produce: an event at step `k` with tag level `m`
//! codes, for every relation index `n >= m` simultaneously, a derivation
//! against the target world's limit claim. The path starts at the root and
//! moves to the event's target whenever the target lies below the current
//! world at some qualifying level, and stays put otherwise.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kripke::JModel;

/// One injected derivation event.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SolovayEvent {
    /// Least relation index at which the event fires.
    pub level: usize,
    /// World whose limit claim the coded derivation refutes.
    pub target: usize,
}

/// A finite map from step indices to events; at most one event per step,
/// since a derivation code proves a unique formula.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SolovaySchedule {
    events: BTreeMap<u64, SolovayEvent>,
}

impl SolovaySchedule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, step: u64, level: usize, target: usize) {
        self.events.insert(step, SolovayEvent { level, target });
    }

    pub fn events(&self) -> &BTreeMap<u64, SolovayEvent> {
        &self.events
    }

    pub fn max_step(&self) -> Option<u64> {
        self.events.keys().next_back().copied()
    }
}

/// A run of the path recursion; starts at the root world 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolovayPath {
    steps: Vec<usize>,
}

impl SolovayPath {
    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Always false: a path contains at least the root.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> usize {
        *self.steps.last().expect("paths are non-empty")
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &SolovayPath) -> bool {
        other.steps.starts_with(&self.steps)
    }
}

impl fmt::Display for SolovayPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("event at step {step} targets world {target}, model has {worlds}")]
    TargetOutOfRange {
        step: u64,
        target: usize,
        worlds: usize,
    },
}

/// Runs the path recursion for `length` steps over a rooted valid model.
/// `steps[0] = 0`; at step `k` with the path at `w`, an event `(m, v)`
/// moves to `v` iff `v <_n w` for some `n >= m`.
pub fn run_path(
    model: &JModel,
    schedule: &SolovaySchedule,
    length: usize,
) -> Result<SolovayPath, ScheduleError> {
    assert!(length >= 1, "paths have at least the root");
    for (step, ev) in schedule.events() {
        if ev.target >= model.world_count() {
            return Err(ScheduleError::TargetOutOfRange {
                step: *step,
                target: ev.target,
                worlds: model.world_count(),
            });
        }
    }
    let mut steps = Vec::with_capacity(length);
    steps.push(0);
    for k in 0..length - 1 {
        let w = steps[k];
        let next = match schedule.events().get(&(k as u64)) {
            Some(ev) => {
                let fires =
                    (ev.level..model.relation_count()).any(|n| model.is_edge(n, ev.target, w));
                if fires {
                    ev.target
                } else {
                    w
                }
            }
            None => w,
        };
        steps.push(next);
    }
    Ok(SolovayPath { steps })
}

/// The eventually constant value of the path: every event lies strictly
/// before the returned run's end, so longer runs only repeat it.
pub fn limit_value(model: &JModel, schedule: &SolovaySchedule) -> Result<usize, ScheduleError> {
    let length = schedule.max_step().map_or(1, |s| s as usize + 2);
    Ok(run_path(model, schedule, length)?.last())
}

/// Lemma-style properties checked by [`check_path_properties`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PathProperty {
    /// Runs of different lengths are prefix-comparable.
    PrefixComparable,
    /// A run of every length exists.
    AllLengthsExist,
    /// The value at each index agrees across runs.
    UniqueValues,
    /// Later values lie (reflexively) `≪_0`-below earlier ones.
    Descent,
}

impl PathProperty {
    pub fn id(self) -> &'static str {
        match self {
            PathProperty::PrefixComparable => "prefix-comparable",
            PathProperty::AllLengthsExist => "all-lengths-exist",
            PathProperty::UniqueValues => "unique-values",
            PathProperty::Descent => "descent",
        }
    }
}

impl fmt::Display for PathProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathViolation {
    /// Index of the offending schedule in the checked batch.
    pub schedule: usize,
    pub property: PathProperty,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PathPropertyReport {
    pub schedules_checked: usize,
    pub runs_checked: usize,
    pub violations: Vec<PathViolation>,
}

impl PathPropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The first descent failure in `steps`: a pair `j < i` whose later value is
/// neither equal to nor `≪_0`-below the earlier one.
pub fn descent_violation(model: &JModel, steps: &[usize]) -> Option<(usize, usize)> {
    let ll0 = model.ll_below(0);
    for i in 1..steps.len() {
        for j in 0..i {
            let ok = steps[i] == steps[j] || ll0[steps[j]] & (1 << steps[i]) != 0;
            if !ok {
                return Some((j, i));
            }
        }
    }
    None
}

/// Verifies the path lemmas over every schedule and every run length up to
/// `max_length` on a rooted valid model.
pub fn check_path_properties(
    model: &JModel,
    schedules: &[SolovaySchedule],
    max_length: usize,
) -> PathPropertyReport {
    let mut report = PathPropertyReport::default();
    for (sched_idx, schedule) in schedules.iter().enumerate() {
        report.schedules_checked += 1;
        let mut runs = Vec::with_capacity(max_length);
        for length in 1..=max_length {
            match run_path(model, schedule, length) {
                Ok(path) => {
                    report.runs_checked += 1;
                    runs.push(path);
                }
                Err(e) => report.violations.push(PathViolation {
                    schedule: sched_idx,
                    property: PathProperty::AllLengthsExist,
                    detail: format!("length {length}: {e}"),
                }),
            }
        }
        for pair in runs.windows(2) {
            if !pair[0].is_prefix_of(&pair[1]) {
                report.violations.push(PathViolation {
                    schedule: sched_idx,
                    property: PathProperty::PrefixComparable,
                    detail: format!("{} is not a prefix of {}", pair[0], pair[1]),
                });
            }
        }
        for k in 0..max_length {
            let mut values = runs.iter().filter(|r| r.len() > k).map(|r| r.steps()[k]);
            if let Some(first) = values.next() {
                if values.any(|v| v != first) {
                    report.violations.push(PathViolation {
                        schedule: sched_idx,
                        property: PathProperty::UniqueValues,
                        detail: format!("index {k} takes several values"),
                    });
                }
            }
        }
        if let Some(run) = runs.last() {
            if let Some((j, i)) = descent_violation(model, run.steps()) {
                report.violations.push(PathViolation {
                    schedule: sched_idx,
                    property: PathProperty::Descent,
                    detail: format!(
                        "steps {j} -> {i}: {} does not sit below {}",
                        run.steps()[i],
                        run.steps()[j]
                    ),
                });
            }
        }
    }
    report
}

/// Every schedule with at most `max_events` events at steps below
/// `max_step`, levels below `n_levels`, targets below `n_worlds`; ordered
/// by event count, then lexicographically by (step, level, target).
pub fn enumerate_schedules(
    n_levels: usize,
    n_worlds: usize,
    max_events: usize,
    max_step: u64,
) -> Vec<SolovaySchedule> {
    let mut out = Vec::new();
    let mut current = SolovaySchedule::new();
    for count in 0..=max_events {
        fill(
            &mut out,
            &mut current,
            count,
            0,
            n_levels,
            n_worlds,
            max_step,
        );
    }
    return out;

    fn fill(
        out: &mut Vec<SolovaySchedule>,
        current: &mut SolovaySchedule,
        remaining: usize,
        from_step: u64,
        n_levels: usize,
        n_worlds: usize,
        max_step: u64,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for step in from_step..max_step {
            for level in 0..n_levels {
                for target in 0..n_worlds {
                    current.insert(step, level, target);
                    fill(
                        out,
                        current,
                        remaining - 1,
                        step + 1,
                        n_levels,
                        n_worlds,
                        max_step,
                    );
                    current.events.remove(&step);
                }
            }
        }
    }
}

/// Error reading the schedule file format.
#[derive(Debug, Error)]
pub enum ScheduleFormatError {
    #[error("invalid schedule file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid schedule: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct ScheduleFile {
    events: BTreeMap<String, EventFile>,
}

#[derive(Serialize, Deserialize)]
struct EventFile {
    level: usize,
    target: usize,
}

/// Serializes a schedule into the documented JSON file format.
pub fn schedule_to_json(schedule: &SolovaySchedule) -> String {
    let file = ScheduleFile {
        events: schedule
            .events
            .iter()
            .map(|(k, ev)| {
                (
                    k.to_string(),
                    EventFile {
                        level: ev.level,
                        target: ev.target,
                    },
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("schedule serialization cannot fail")
}

/// Parses the schedule file format.
pub fn schedule_from_json(text: &str) -> Result<SolovaySchedule, ScheduleFormatError> {
    let file: ScheduleFile = serde_json::from_str(text)?;
    let mut schedule = SolovaySchedule::new();
    for (key, ev) in file.events {
        let step: u64 = key.parse().map_err(|_| {
            ScheduleFormatError::Invalid(format!("step key {key:?} is not a natural number"))
        })?;
        schedule.insert(step, ev.level, ev.target);
    }
    Ok(schedule)
}
