//! Command-line front end: stable text and JSON output over the library.
//!
//! Exit codes: 0 for a computed result, 1 for flagged negative results
//! (rejected proofs, failed validations, property violations), 2 for usage
//! errors, unreadable files, and malformed inputs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::decide::{
    decide, outcome_to_json, DecideOptions, DecisionOutcome, ProofCorpus, TheoremEvidence,
};
use crate::hilbert::{check_proof, proof_from_json, CheckResult, System};
use crate::kripke::{model_from_json, model_to_json, worlds_in, JModel};
use crate::ordinal::parse_ordinal;
use crate::solovay::{
    check_path_properties, enumerate_schedules, limit_value, run_path, schedule_from_json,
};
use crate::syntax::{condense, m_plus, parse_formula};

#[derive(Parser)]
#[command(
    name = "glp",
    version,
    about = "Decide, refute, and certify formulas of transfinite provability logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal notation utilities.
    Ordinal {
        #[command(subcommand)]
        op: OrdinalOp,
    },
    /// Parse a formula and print its canonical form.
    Parse {
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Replace a formula's modalities by the indices 0..N.
    Condense {
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the relativization M+ of a finite-index formula.
    Mplus {
        formula: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a proof file.
    CheckProof {
        file: PathBuf,
        /// Override the system recorded in the file.
        #[arg(long)]
        system: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Decide a formula: theorem certificate, countermodel, or unknown.
    Decide {
        formula: String,
        #[arg(long, default_value_t = 4)]
        max_worlds: usize,
        /// Search stratified frames only.
        #[arg(long)]
        stratified_only: bool,
        /// Directory of extra proof files to use as certificates.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Worker threads for the countermodel search.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        json: bool,
    },
    /// Model utilities.
    Model {
        #[command(subcommand)]
        op: ModelOp,
    },
    /// Solovay path utilities.
    Solovay {
        #[command(subcommand)]
        op: SolovayOp,
    },
}

#[derive(Subcommand)]
enum OrdinalOp {
    /// Compare two ordinal notations.
    Cmp {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Left-multiply a notation by omega.
    Omul {
        a: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether left multiplication by omega fixes the notation.
    Absorbing {
        a: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ModelOp {
    /// Check the frame conditions of a model file.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a formula on a model.
    Check {
        file: PathBuf,
        formula: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum SolovayOp {
    /// Run the path recursion for a fixed number of steps.
    Run {
        model: PathBuf,
        schedule: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the path lemmas over every small schedule.
    Props {
        model: PathBuf,
        /// Most events per schedule.
        #[arg(long, default_value_t = 2)]
        max_events: usize,
        /// Events sit at steps below this; runs go one step further.
        #[arg(long, default_value_t = 5)]
        max_steps: u64,
        #[arg(long)]
        json: bool,
    },
}

/// A finished invocation: exit code plus captured output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result text destined for stdout; `flagged` selects exit code 1.
struct Output {
    text: String,
    flagged: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            flagged: false,
        }
    }

    fn flagged_if(text: String, flagged: bool) -> Self {
        Output { text, flagged }
    }
}

/// A diagnostic destined for stderr with exit code 2.
struct UsageError(String);

type CommandResult = Result<Output, UsageError>;

/// Runs the CLI on `argv` (including the program name) without touching the
/// process: callers print the streams and exit with the code.
pub fn run<I, S>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(Output { text, flagged }) => CliOutcome {
            code: if flagged { 1 } else { 0 },
            stdout: text,
            stderr: String::new(),
        },
        Err(UsageError(message)) => CliOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

fn usage(message: impl std::fmt::Display) -> UsageError {
    UsageError(message.to_string())
}

fn read_file(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| usage(format_args!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<JModel, UsageError> {
    model_from_json(&read_file(path)?).map_err(usage)
}

fn execute(command: Command) -> CommandResult {
    match command {
        Command::Ordinal { op } => run_ordinal(op),
        Command::Parse { formula, json } => {
            let f = parse_formula(&formula).map_err(usage)?;
            Ok(Output::ok(if json {
                format!("{{\"formula\":{}}}\n", json_string(&f.to_string()))
            } else {
                format!("{f}\n")
            }))
        }
        Command::Condense { formula, json } => {
            let f = parse_formula(&formula).map_err(usage)?;
            let (g, map) = condense(&f);
            Ok(Output::ok(if json {
                let levels: Vec<String> = map.levels().iter().map(|l| l.to_string()).collect();
                format!(
                    "{{\"formula\":{},\"map\":{}}}\n",
                    json_string(&g.to_string()),
                    serde_json::to_string(&levels).expect("string array"),
                )
            } else {
                format!("formula: {g}\nmap: {map}\n")
            }))
        }
        Command::Mplus { formula, json } => {
            let f = parse_formula(&formula).map_err(usage)?;
            let m = m_plus(&f).map_err(usage)?;
            Ok(Output::ok(if json {
                format!("{{\"formula\":{}}}\n", json_string(&m.to_string()))
            } else {
                format!("{m}\n")
            }))
        }
        Command::CheckProof { file, system, json } => {
            let mut proof = proof_from_json(&read_file(&file)?).map_err(usage)?;
            if let Some(name) = system {
                proof.system = System::from_name(&name)
                    .ok_or_else(|| usage(format_args!("unknown system {name:?}")))?;
            }
            let result = check_proof(&proof);
            let flagged = !result.is_accepted();
            Ok(Output::flagged_if(
                if json {
                    match &result {
                        CheckResult::Accepted => "{\"result\":\"Accepted\"}\n".to_string(),
                        CheckResult::Rejected { line, reason } => format!(
                            "{{\"result\":\"Rejected\",\"line\":{line},\"reason\":\"{reason}\"}}\n"
                        ),
                    }
                } else {
                    format!("{result}\n")
                },
                flagged,
            ))
        }
        Command::Decide {
            formula,
            max_worlds,
            stratified_only,
            corpus,
            parallel,
            json,
        } => {
            let f = parse_formula(&formula).map_err(usage)?;
            if max_worlds < 1 {
                return Err(usage("--max-worlds must be at least 1"));
            }
            if parallel < 1 {
                return Err(usage("--parallel must be at least 1"));
            }
            let mut store = ProofCorpus::builtin();
            if let Some(dir) = corpus {
                load_corpus_dir(&dir, &mut store)?;
            }
            let options = DecideOptions {
                max_worlds,
                stratified_only,
                threads: parallel,
            };
            let outcome = decide(&f, &store, &options);
            Ok(Output::ok(if json {
                format!("{}\n", outcome_to_json(&outcome))
            } else {
                format!("{}\n", describe_outcome(&outcome))
            }))
        }
        Command::Model { op } => run_model(op),
        Command::Solovay { op } => run_solovay(op),
    }
}

fn run_ordinal(op: OrdinalOp) -> CommandResult {
    match op {
        OrdinalOp::Cmp { a, b, json } => {
            let a = parse_ordinal(&a).map_err(usage)?;
            let b = parse_ordinal(&b).map_err(usage)?;
            let ordering = format!("{:?}", a.cmp(&b));
            Ok(Output::ok(if json {
                format!("{{\"ordering\":\"{ordering}\"}}\n")
            } else {
                format!("{ordering}\n")
            }))
        }
        OrdinalOp::Omul { a, json } => {
            let a = parse_ordinal(&a).map_err(usage)?;
            let result = a.omega_left_multiply();
            Ok(Output::ok(if json {
                format!("{{\"result\":{}}}\n", json_string(&result.to_string()))
            } else {
                format!("{result}\n")
            }))
        }
        OrdinalOp::Absorbing { a, json } => {
            let a = parse_ordinal(&a).map_err(usage)?;
            let absorbing = a.is_omega_absorbing();
            Ok(Output::ok(if json {
                format!("{{\"absorbing\":{absorbing}}}\n")
            } else {
                format!("{absorbing}\n")
            }))
        }
    }
}

fn run_model(op: ModelOp) -> CommandResult {
    match op {
        ModelOp::Validate { file, json } => {
            let model = load_model(&file)?;
            let report = model.validate_j_frame();
            let flagged = !report.is_j_frame;
            Ok(Output::flagged_if(
                if json {
                    let violations: Vec<serde_json::Value> = report
                        .violations
                        .iter()
                        .map(|v| {
                            serde_json::json!({
                                "condition": v.condition.id(),
                                "witness": v.witness,
                            })
                        })
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::json!({
                            "is_j_frame": report.is_j_frame,
                            "is_stratified": report.is_stratified,
                            "violations": violations,
                        })
                    )
                } else {
                    let mut text = format!(
                        "J-frame: {}\nstratified: {}\n",
                        report.is_j_frame, report.is_stratified
                    );
                    for v in &report.violations {
                        let _ =
                            writeln!(text, "violation {}: witness {:?}", v.condition, v.witness);
                    }
                    text
                },
                flagged,
            ))
        }
        ModelOp::Check {
            file,
            formula,
            json,
        } => {
            let model = load_model(&file)?;
            let f = parse_formula(&formula).map_err(usage)?;
            let sat = model.eval(&f).map_err(usage)?;
            let worlds: Vec<usize> = worlds_in(sat).collect();
            let valid = sat == model.full();
            Ok(Output::flagged_if(
                if json {
                    format!(
                        "{}\n",
                        serde_json::json!({ "worlds": worlds, "valid": valid })
                    )
                } else {
                    format!("worlds: {worlds:?}\nvalid: {valid}\n")
                },
                !valid,
            ))
        }
    }
}

fn run_solovay(op: SolovayOp) -> CommandResult {
    match op {
        SolovayOp::Run {
            model,
            schedule,
            steps,
            json,
        } => {
            let model = load_model(&model)?;
            let schedule = schedule_from_json(&read_file(&schedule)?).map_err(usage)?;
            if steps < 1 {
                return Err(usage("--steps must be at least 1"));
            }
            let path = run_path(&model, &schedule, steps).map_err(usage)?;
            let limit = limit_value(&model, &schedule).map_err(usage)?;
            Ok(Output::ok(if json {
                format!(
                    "{}\n",
                    serde_json::json!({ "path": path.steps(), "limit": limit })
                )
            } else {
                format!("path: {path}\nlimit: {limit}\n")
            }))
        }
        SolovayOp::Props {
            model,
            max_events,
            max_steps,
            json,
        } => {
            let model = load_model(&model)?;
            let schedules = enumerate_schedules(
                model.relation_count(),
                model.world_count(),
                max_events,
                max_steps,
            );
            let report = check_path_properties(&model, &schedules, max_steps as usize + 1);
            let flagged = !report.passed();
            Ok(Output::flagged_if(
                if json {
                    let violations: Vec<serde_json::Value> = report
                        .violations
                        .iter()
                        .map(|v| {
                            serde_json::json!({
                                "schedule": v.schedule,
                                "property": v.property.id(),
                                "detail": v.detail,
                            })
                        })
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::json!({
                            "schedules_checked": report.schedules_checked,
                            "runs_checked": report.runs_checked,
                            "violations": violations,
                        })
                    )
                } else {
                    let mut text = format!(
                        "schedules: {}\nruns: {}\nviolations: {}\n",
                        report.schedules_checked,
                        report.runs_checked,
                        report.violations.len()
                    );
                    for v in &report.violations {
                        let _ = writeln!(
                            text,
                            "violation (schedule {}, {}): {}",
                            v.schedule, v.property, v.detail
                        );
                    }
                    text
                },
                flagged,
            ))
        }
    }
}

fn load_corpus_dir(dir: &Path, store: &mut ProofCorpus) -> Result<(), UsageError> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| usage(format_args!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    for path in paths {
        let proof = proof_from_json(&read_file(&path)?)
            .map_err(|e| usage(format_args!("{}: {e}", path.display())))?;
        store.push(proof);
    }
    Ok(())
}

fn describe_outcome(outcome: &DecisionOutcome) -> String {
    match outcome {
        DecisionOutcome::Theorem {
            evidence: TheoremEvidence::AxiomInstance { schema },
        } => format!("Theorem (axiom {schema})"),
        DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(proof),
        } => format!("Theorem (proof, {} lines)", proof.lines.len()),
        DecisionOutcome::NonTheorem { model, world } => format!(
            "NonTheorem (witness world {world} of {})\n{}",
            model.world_count(),
            model_to_json(model)
        ),
        DecisionOutcome::Unknown { max_worlds } => {
            format!("Unknown (searched up to {max_worlds} worlds)")
        }
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}
