//! Hilbert-style proof checking for the polymodal provability calculi.
//!
//! Four systems are supported: the transfinite-index calculus, its
//! finite-index restriction, the frame-complete weakening `J`, and the
//! two-flavor system `GLBlack` (a box plus a stronger black box satisfying
//! distribution, 4, and box-implies-black-box, in which the Löb rule for the
//! black box is derivable). Axioms are schemas: matching is structural, with
//! ordinal side conditions decided by notation comparison.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{self, OrdinalNotation};
use crate::parse::ParseError;
use crate::syntax::{self, CondensationMap, Formula, IndexError};

/// The proof system a derivation lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum System {
    GlpPrec,
    GlpOmega,
    J,
    GlBlack,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::GlpPrec => "GLP_prec",
            System::GlpOmega => "GLP_omega",
            System::J => "J",
            System::GlBlack => "GLBlack",
        }
    }

    pub fn from_name(name: &str) -> Option<System> {
        match name {
            "GLP_prec" => Some(System::GlpPrec),
            "GLP_omega" => Some(System::GlpOmega),
            "J" => Some(System::J),
            "GLBlack" => Some(System::GlBlack),
            _ => None,
        }
    }

    /// The axiom schemas available in this system, in recognition order.
    pub fn schemas(self) -> &'static [SchemaName] {
        use SchemaName::*;
        match self {
            System::GlpPrec | System::GlpOmega => &[Tautology, K, Loeb, Monotone, NegIntrospect],
            System::J => &[Tautology, K, Loeb, NegIntrospect, J6, J7],
            System::GlBlack => &[Tautology, K, Loeb, Glb1, Glb2, Glb3],
        }
    }

    /// Whether `index` may appear in formulas of this system.
    fn index_ok(self, index: &OrdinalNotation) -> bool {
        match self {
            System::GlpPrec => true,
            System::GlpOmega | System::J => index.as_nat().is_some(),
            System::GlBlack => matches!(index.as_nat(), Some(0) | Some(1)),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Names of the recognized axiom schemas.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SchemaName {
    Tautology,
    K,
    Loeb,
    Monotone,
    NegIntrospect,
    J6,
    J7,
    Glb1,
    Glb2,
    Glb3,
}

impl SchemaName {
    pub fn name(self) -> &'static str {
        match self {
            SchemaName::Tautology => "tautology",
            SchemaName::K => "K",
            SchemaName::Loeb => "Loeb",
            SchemaName::Monotone => "monotone",
            SchemaName::NegIntrospect => "neg-introspect",
            SchemaName::J6 => "J6",
            SchemaName::J7 => "J7",
            SchemaName::Glb1 => "GLB1",
            SchemaName::Glb2 => "GLB2",
            SchemaName::Glb3 => "GLB3",
        }
    }

    pub fn from_name(name: &str) -> Option<SchemaName> {
        use SchemaName::*;
        [
            Tautology,
            K,
            Loeb,
            Monotone,
            NegIntrospect,
            J6,
            J7,
            Glb1,
            Glb2,
            Glb3,
        ]
        .into_iter()
        .find(|s| s.name() == name)
    }
}

impl fmt::Display for SchemaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Justification of a single proof line. Line references are 1-based and
/// must point strictly upward.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Justification {
    Axiom(SchemaName),
    /// A premise of the derivation; proofs carrying hypotheses certify
    /// entailment from the hypotheses rather than theoremhood.
    Hypothesis,
    /// From `antecedent: a` and `implication: a -> f`, conclude `f`.
    ModusPonens {
        antecedent: usize,
        implication: usize,
    },
    /// From `premise: f`, conclude `[index]f`.
    Necessitation {
        premise: usize,
        index: OrdinalNotation,
    },
    /// From `premise: [index]f -> f`, conclude `f`; `GLBlack` box flavor only.
    LoebRule {
        premise: usize,
        index: OrdinalNotation,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertProof {
    pub system: System,
    pub lines: Vec<ProofLine>,
}

impl HilbertProof {
    /// The proved formula: the last line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn has_hypotheses(&self) -> bool {
        self.lines
            .iter()
            .any(|l| l.justification == Justification::Hypothesis)
    }
}

/// Why a proof was rejected; `code` is the stable machine-readable form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RejectReason {
    EmptyProof,
    IndexNotInSystem,
    SchemaNotInSystem,
    AxiomMismatch,
    BadLineRef,
    MpMismatch,
    NecMismatch,
    LoebNotAllowed,
    LoebMismatch,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::EmptyProof => "empty-proof",
            RejectReason::IndexNotInSystem => "index-not-in-system",
            RejectReason::SchemaNotInSystem => "schema-not-in-system",
            RejectReason::AxiomMismatch => "axiom-mismatch",
            RejectReason::BadLineRef => "bad-line-ref",
            RejectReason::MpMismatch => "mp-mismatch",
            RejectReason::NecMismatch => "nec-mismatch",
            RejectReason::LoebNotAllowed => "loeb-not-allowed",
            RejectReason::LoebMismatch => "loeb-mismatch",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Outcome of [`check_proof`]; rejection reports the first offending line
/// (1-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CheckResult {
    Accepted,
    Rejected { line: usize, reason: RejectReason },
}

impl CheckResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckResult::Accepted)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckResult::Accepted => write!(f, "Accepted"),
            CheckResult::Rejected { line, reason } => {
                write!(f, "Rejected at line {line}: {reason}")
            }
        }
    }
}

/// Boolean validity with boxed subformulas and variables as atoms.
pub fn is_tautology(f: &Formula) -> bool {
    let mut atoms = BTreeSet::new();
    collect_atoms(f, &mut atoms);
    let atoms: Vec<&Formula> = atoms.iter().collect();
    // Every assignment to the atoms must satisfy the formula.
    for mask in 0u64..(1u64 << atoms.len()) {
        let value = |g: &Formula| -> bool {
            atoms
                .iter()
                .position(|a| *a == g)
                .map(|i| mask & (1 << i) != 0)
                .unwrap_or(false)
        };
        if !eval_bool(f, &value) {
            return false;
        }
    }
    true
}

fn collect_atoms(f: &Formula, atoms: &mut BTreeSet<Formula>) {
    match f {
        Formula::Bottom => {}
        Formula::Var(_) | Formula::Box(_, _) => {
            atoms.insert(f.clone());
        }
        Formula::Implies(a, b) => {
            collect_atoms(a, atoms);
            collect_atoms(b, atoms);
        }
    }
}

fn eval_bool(f: &Formula, value: &impl Fn(&Formula) -> bool) -> bool {
    match f {
        Formula::Bottom => false,
        Formula::Var(_) | Formula::Box(_, _) => value(f),
        Formula::Implies(a, b) => !eval_bool(a, value) || eval_bool(b, value),
    }
}

/// Views `f` as a diamond `<i>g`, i.e. `~[i]~g` on the core AST.
fn as_diamond(f: &Formula) -> Option<(&OrdinalNotation, &Formula)> {
    if let Formula::Implies(a, bot) = f {
        if **bot == Formula::Bottom {
            if let Formula::Box(i, inner) = &**a {
                if let Formula::Implies(g, bot2) = &**inner {
                    if **bot2 == Formula::Bottom {
                        return Some((i, g));
                    }
                }
            }
        }
    }
    None
}

/// Whether `f` instantiates `schema` in `system`. Matching is structural on
/// metavariables; side conditions use the ordinal order.
pub fn matches_schema(f: &Formula, schema: SchemaName, system: System) -> bool {
    let ok = |i: &OrdinalNotation| system.index_ok(i);
    // In GLBlack, the plain K and Löb schemas belong to the box flavor only.
    let box_flavor = |i: &OrdinalNotation| system != System::GlBlack || i.as_nat() == Some(0);
    match schema {
        SchemaName::Tautology => is_tautology(f),
        SchemaName::K => {
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(i, ab), Formula::Implies(ba, bb)) = (&**l, &**r) {
                    if let (Formula::Implies(a, b), Formula::Box(i2, a2), Formula::Box(i3, b2)) =
                        (&**ab, &**ba, &**bb)
                    {
                        return i == i2 && i == i3 && a == a2 && b == b2 && ok(i) && box_flavor(i);
                    }
                }
            }
            false
        }
        SchemaName::Loeb => {
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(i, inner), Formula::Box(i3, a3)) = (&**l, &**r) {
                    if let Formula::Implies(la, a2) = &**inner {
                        if let Formula::Box(i2, a) = &**la {
                            return i == i2
                                && i == i3
                                && a == a2
                                && a == a3
                                && ok(i)
                                && box_flavor(i);
                        }
                    }
                }
            }
            false
        }
        SchemaName::Monotone => {
            if let Formula::Implies(l, r) = f {
                if let (Some((zeta, a)), Some((xi, a2))) = (as_diamond(l), as_diamond(r)) {
                    return a == a2 && xi < zeta && ok(xi) && ok(zeta);
                }
            }
            false
        }
        SchemaName::NegIntrospect => {
            if let Formula::Implies(l, r) = f {
                if let (Some((xi, _)), Formula::Box(zeta, inner)) = (as_diamond(l), &**r) {
                    return **inner == **l && xi < zeta && ok(xi) && ok(zeta);
                }
            }
            false
        }
        SchemaName::J6 => {
            // [n]a -> [m][n]a for n <= m.
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(n, _), Formula::Box(m, inner)) = (&**l, &**r) {
                    if let (Some(n), Some(m)) = (n.as_nat(), m.as_nat()) {
                        return **inner == **l && n <= m;
                    }
                }
            }
            false
        }
        SchemaName::J7 => {
            // [n]a -> [n][m]a for n < m.
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(n, a), Formula::Box(n2, inner)) = (&**l, &**r) {
                    if let Formula::Box(m, a2) = &**inner {
                        if let (Some(nv), Some(mv)) = (n.as_nat(), m.as_nat()) {
                            return n == n2 && a == a2 && nv < mv;
                        }
                    }
                }
            }
            false
        }
        SchemaName::Glb1 => {
            // [0]a -> [1]a.
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(i, a), Formula::Box(j, a2)) = (&**l, &**r) {
                    return i.as_nat() == Some(0) && j.as_nat() == Some(1) && a == a2;
                }
            }
            false
        }
        SchemaName::Glb2 => {
            // Distribution for the black-box flavor.
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(i, ab), Formula::Implies(ba, bb)) = (&**l, &**r) {
                    if let (Formula::Implies(a, b), Formula::Box(i2, a2), Formula::Box(i3, b2)) =
                        (&**ab, &**ba, &**bb)
                    {
                        return i.as_nat() == Some(1)
                            && i2.as_nat() == Some(1)
                            && i3.as_nat() == Some(1)
                            && a == a2
                            && b == b2;
                    }
                }
            }
            false
        }
        SchemaName::Glb3 => {
            // [1]a -> [1][1]a.
            if let Formula::Implies(l, r) = f {
                if let (Formula::Box(i, _), Formula::Box(j, inner)) = (&**l, &**r) {
                    return i.as_nat() == Some(1) && j.as_nat() == Some(1) && **inner == **l;
                }
            }
            false
        }
    }
}

/// The first schema of `system` that `f` instantiates, if any.
pub fn recognize_axiom(f: &Formula, system: System) -> Option<SchemaName> {
    system
        .schemas()
        .iter()
        .copied()
        .find(|s| matches_schema(f, *s, system))
}

/// Checks every line of `proof`; stops at the first failure.
pub fn check_proof(proof: &HilbertProof) -> CheckResult {
    if proof.lines.is_empty() {
        return CheckResult::Rejected {
            line: 0,
            reason: RejectReason::EmptyProof,
        };
    }
    for (k, line) in proof.lines.iter().enumerate() {
        let lineno = k + 1;
        let reject = |reason| CheckResult::Rejected {
            line: lineno,
            reason,
        };
        if line
            .formula
            .modalities()
            .iter()
            .any(|i| !proof.system.index_ok(i))
        {
            return reject(RejectReason::IndexNotInSystem);
        }
        let prev = |r: usize| -> Option<&Formula> {
            (1..lineno)
                .contains(&r)
                .then(|| &proof.lines[r - 1].formula)
        };
        match &line.justification {
            Justification::Axiom(schema) => {
                if !proof.system.schemas().contains(schema) {
                    return reject(RejectReason::SchemaNotInSystem);
                }
                if !matches_schema(&line.formula, *schema, proof.system) {
                    return reject(RejectReason::AxiomMismatch);
                }
            }
            Justification::Hypothesis => {}
            Justification::ModusPonens {
                antecedent,
                implication,
            } => {
                let (Some(a), Some(imp)) = (prev(*antecedent), prev(*implication)) else {
                    return reject(RejectReason::BadLineRef);
                };
                let expected = Formula::implies(a.clone(), line.formula.clone());
                if *imp != expected {
                    return reject(RejectReason::MpMismatch);
                }
            }
            Justification::Necessitation { premise, index } => {
                let Some(p) = prev(*premise) else {
                    return reject(RejectReason::BadLineRef);
                };
                if !proof.system.index_ok(index) {
                    return reject(RejectReason::IndexNotInSystem);
                }
                if line.formula != Formula::boxed(index.clone(), p.clone()) {
                    return reject(RejectReason::NecMismatch);
                }
            }
            Justification::LoebRule { premise, index } => {
                if proof.system != System::GlBlack || index.as_nat() != Some(0) {
                    return reject(RejectReason::LoebNotAllowed);
                }
                let Some(p) = prev(*premise) else {
                    return reject(RejectReason::BadLineRef);
                };
                let expected = Formula::implies(
                    Formula::boxed(index.clone(), line.formula.clone()),
                    line.formula.clone(),
                );
                if *p != expected {
                    return reject(RejectReason::LoebMismatch);
                }
            }
        }
    }
    CheckResult::Accepted
}

/// Error from [`lift_proof`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftProofError {
    #[error("only finite-index proofs can be lifted, got {system}")]
    WrongSystem { system: System },
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Maps a finite-index proof through a condensation map, replacing each
/// index `i` by the i-th level everywhere (formulas and necessitation
/// indices). The result is a transfinite-index proof; acceptance is
/// preserved because the map is strictly increasing.
pub fn lift_proof(
    proof: &HilbertProof,
    map: &CondensationMap,
) -> Result<HilbertProof, LiftProofError> {
    if proof.system != System::GlpOmega {
        return Err(LiftProofError::WrongSystem {
            system: proof.system,
        });
    }
    let lift_index = |i: &OrdinalNotation| -> Result<OrdinalNotation, IndexError> {
        let n = i
            .as_nat()
            .ok_or_else(|| IndexError::NotFinite { index: i.clone() })?;
        map.get(n as usize).cloned().ok_or(IndexError::OutOfRange {
            index: n,
            len: map.len(),
        })
    };
    let mut lines = Vec::with_capacity(proof.lines.len());
    for line in &proof.lines {
        let justification = match &line.justification {
            Justification::Necessitation { premise, index } => Justification::Necessitation {
                premise: *premise,
                index: lift_index(index)?,
            },
            Justification::LoebRule { premise, index } => Justification::LoebRule {
                premise: *premise,
                index: lift_index(index)?,
            },
            other => other.clone(),
        };
        lines.push(ProofLine {
            formula: syntax::lift(&line.formula, map)?,
            justification,
        });
    }
    Ok(HilbertProof {
        system: System::GlpPrec,
        lines,
    })
}

/// Incremental construction of proofs; conclusions of inference lines are
/// derived from the cited lines, so ill-formed applications surface at build
/// time. Line numbers are 1-based, as in the file format.
pub struct ProofBuilder {
    system: System,
    lines: Vec<ProofLine>,
}

impl ProofBuilder {
    pub fn new(system: System) -> Self {
        ProofBuilder {
            system,
            lines: Vec::new(),
        }
    }

    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(ProofLine {
            formula,
            justification,
        });
        self.lines.len()
    }

    pub fn axiom(&mut self, schema: SchemaName, formula: Formula) -> usize {
        self.push(formula, Justification::Axiom(schema))
    }

    pub fn hyp(&mut self, formula: Formula) -> usize {
        self.push(formula, Justification::Hypothesis)
    }

    pub fn mp(&mut self, antecedent: usize, implication: usize) -> usize {
        let Formula::Implies(a, c) = &self.lines[implication - 1].formula else {
            panic!("modus ponens citing a non-implication");
        };
        assert_eq!(
            **a,
            self.lines[antecedent - 1].formula,
            "modus ponens antecedent mismatch"
        );
        let conclusion = (**c).clone();
        self.push(
            conclusion,
            Justification::ModusPonens {
                antecedent,
                implication,
            },
        )
    }

    pub fn nec(&mut self, premise: usize, index: OrdinalNotation) -> usize {
        let f = Formula::boxed(index.clone(), self.lines[premise - 1].formula.clone());
        self.push(f, Justification::Necessitation { premise, index })
    }

    pub fn loeb(&mut self, premise: usize) -> usize {
        let Formula::Implies(boxed, c) = &self.lines[premise - 1].formula else {
            panic!("loeb rule citing a non-implication");
        };
        assert_eq!(
            **boxed,
            Formula::boxed(OrdinalNotation::zero(), (**c).clone()),
            "loeb rule premise shape"
        );
        let conclusion = (**c).clone();
        self.push(
            conclusion,
            Justification::LoebRule {
                premise,
                index: OrdinalNotation::zero(),
            },
        )
    }

    pub fn finish(self) -> HilbertProof {
        HilbertProof {
            system: self.system,
            lines: self.lines,
        }
    }
}

/// Error reading the proof file format.
#[derive(Debug, Error)]
pub enum ProofFormatError {
    #[error("invalid proof file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown system {0:?}")]
    UnknownSystem(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct ProofFile {
    system: String,
    lines: Vec<ProofLineFile>,
}

#[derive(Serialize, Deserialize)]
struct ProofLineFile {
    formula: String,
    rule: String,
}

/// Serializes a proof into the documented JSON file format.
pub fn proof_to_json(proof: &HilbertProof) -> String {
    let file = ProofFile {
        system: proof.system.name().to_string(),
        lines: proof
            .lines
            .iter()
            .map(|l| ProofLineFile {
                formula: l.formula.to_string(),
                rule: match &l.justification {
                    Justification::Axiom(s) => format!("axiom:{s}"),
                    Justification::Hypothesis => "hyp".to_string(),
                    Justification::ModusPonens {
                        antecedent,
                        implication,
                    } => format!("mp {antecedent} {implication}"),
                    Justification::Necessitation { premise, index } => {
                        format!("nec {premise} [{index}]")
                    }
                    Justification::LoebRule { premise, .. } => format!("loeb {premise}"),
                },
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("proof serialization cannot fail")
}

/// Parses the proof file format.
pub fn proof_from_json(text: &str) -> Result<HilbertProof, ProofFormatError> {
    let file: ProofFile = serde_json::from_str(text)?;
    let system = System::from_name(&file.system)
        .ok_or_else(|| ProofFormatError::UnknownSystem(file.system.clone()))?;
    let mut lines = Vec::with_capacity(file.lines.len());
    for (k, line) in file.lines.iter().enumerate() {
        let lineno = k + 1;
        let err = |message: String| ProofFormatError::Line {
            line: lineno,
            message,
        };
        let formula = syntax::parse_formula(&line.formula)
            .map_err(|e: ParseError| err(format!("formula: {e}")))?;
        let mut words = line.rule.split_whitespace();
        let head = words.next().unwrap_or("");
        let justification = if let Some(schema) = head.strip_prefix("axiom:") {
            Justification::Axiom(
                SchemaName::from_name(schema)
                    .ok_or_else(|| err(format!("unknown schema {schema:?}")))?,
            )
        } else {
            match head {
                "hyp" => Justification::Hypothesis,
                "mp" => {
                    let a = parse_ref(words.next(), lineno)?;
                    let b = parse_ref(words.next(), lineno)?;
                    Justification::ModusPonens {
                        antecedent: a,
                        implication: b,
                    }
                }
                "nec" => {
                    let premise = parse_ref(words.next(), lineno)?;
                    let index = words
                        .next()
                        .and_then(|w| w.strip_prefix('[')?.strip_suffix(']'))
                        .ok_or_else(|| err("nec needs a bracketed ordinal".into()))?;
                    let index =
                        ordinal::parse_ordinal(index).map_err(|e| err(format!("ordinal: {e}")))?;
                    Justification::Necessitation { premise, index }
                }
                "loeb" => Justification::LoebRule {
                    premise: parse_ref(words.next(), lineno)?,
                    index: OrdinalNotation::zero(),
                },
                other => return Err(err(format!("unknown rule {other:?}"))),
            }
        };
        if words.next().is_some() {
            return Err(err("trailing tokens in rule".into()));
        }
        lines.push(ProofLine {
            formula,
            justification,
        });
    }
    Ok(HilbertProof { system, lines })
}

fn parse_ref(word: Option<&str>, lineno: usize) -> Result<usize, ProofFormatError> {
    word.and_then(|w| w.parse().ok())
        .filter(|n| *n >= 1)
        .ok_or(ProofFormatError::Line {
            line: lineno,
            message: "expected a 1-based line reference".into(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use proptest::prelude::*;

    fn fml(text: &str) -> Formula {
        parse_formula(text).expect(text)
    }

    #[test]
    fn tautology_examples() {
        assert!(is_tautology(&fml("<w>p -> <w>p")));
        assert!(!is_tautology(&fml("[0]p -> p")));
        assert!(is_tautology(&fml("([0]p & ([0]p -> q)) -> q")));
        assert!(is_tautology(&fml("T")));
        assert!(!is_tautology(&fml("F")));
    }

    #[test]
    fn recognize_axiom_examples() {
        assert_eq!(
            recognize_axiom(&fml("[w]([w]p -> p) -> [w]p"), System::GlpPrec),
            Some(SchemaName::Loeb)
        );
        assert_eq!(
            recognize_axiom(&fml("<w>p -> <1>p"), System::GlpPrec),
            Some(SchemaName::Monotone)
        );
        assert_eq!(recognize_axiom(&fml("<1>p -> <w>p"), System::GlpPrec), None);
        assert_eq!(
            recognize_axiom(&fml("[w](p->q) -> ([w]p -> [w]q)"), System::GlpPrec),
            Some(SchemaName::K)
        );
        assert_eq!(
            recognize_axiom(&fml("<w>p -> [w^w]<w>p"), System::GlpPrec),
            Some(SchemaName::NegIntrospect)
        );
        // Side condition: requires strictly larger outer index.
        assert_eq!(
            recognize_axiom(&fml("<w>p -> [w]<w>p"), System::GlpPrec),
            None
        );
        assert_eq!(
            recognize_axiom(&fml("<w>p -> [1]<w>p"), System::GlpPrec),
            None
        );
    }

    #[test]
    fn j_axioms() {
        assert_eq!(
            recognize_axiom(&fml("[0]p -> [1][0]p"), System::J),
            Some(SchemaName::J6)
        );
        assert_eq!(
            recognize_axiom(&fml("[1]p -> [1][1]p"), System::J),
            Some(SchemaName::J6)
        );
        assert_eq!(
            recognize_axiom(&fml("[0]p -> [0][1]p"), System::J),
            Some(SchemaName::J7)
        );
        // Monotonicity is not available in J.
        assert_eq!(recognize_axiom(&fml("<1>p -> <0>p"), System::J), None);
        assert_eq!(
            recognize_axiom(&fml("<1>p -> <0>p"), System::GlpOmega),
            Some(SchemaName::Monotone)
        );
        // Side conditions.
        assert_eq!(recognize_axiom(&fml("[1]p -> [0][1]p"), System::J), None);
        assert_eq!(recognize_axiom(&fml("[1]p -> [1][0]p"), System::J), None);
        // Transfinite indices are not J formulas.
        assert_eq!(recognize_axiom(&fml("[w]([w]p->p)->[w]p"), System::J), None);
    }

    #[test]
    fn glblack_axioms() {
        assert_eq!(
            recognize_axiom(&fml("[0]p -> [1]p"), System::GlBlack),
            Some(SchemaName::Glb1)
        );
        assert_eq!(
            recognize_axiom(&fml("[1](p->q) -> ([1]p -> [1]q)"), System::GlBlack),
            Some(SchemaName::Glb2)
        );
        assert_eq!(
            recognize_axiom(&fml("[1]p -> [1][1]p"), System::GlBlack),
            Some(SchemaName::Glb3)
        );
        // K and Löb are box-flavor only.
        assert_eq!(
            recognize_axiom(&fml("[0]([0]p->p) -> [0]p"), System::GlBlack),
            Some(SchemaName::Loeb)
        );
        assert_eq!(
            recognize_axiom(&fml("[1]([1]p->p) -> [1]p"), System::GlBlack),
            None
        );
    }

    #[test]
    fn accepts_single_axiom_line() {
        let mut b = ProofBuilder::new(System::GlpPrec);
        b.axiom(SchemaName::Loeb, fml("[w]([w]p->p)->[w]p"));
        assert_eq!(check_proof(&b.finish()), CheckResult::Accepted);
    }

    #[test]
    fn accepts_necessitation() {
        let mut b = ProofBuilder::new(System::GlpOmega);
        let t = b.axiom(SchemaName::Tautology, fml("p->p"));
        b.nec(t, OrdinalNotation::zero());
        let proof = b.finish();
        assert_eq!(proof.conclusion(), Some(&fml("[0](p->p)")));
        assert_eq!(check_proof(&proof), CheckResult::Accepted);
    }

    #[test]
    fn rejects_mp_mismatch() {
        let proof = HilbertProof {
            system: System::GlpOmega,
            lines: vec![
                ProofLine {
                    formula: fml("p->p"),
                    justification: Justification::Axiom(SchemaName::Tautology),
                },
                ProofLine {
                    formula: fml("q"),
                    justification: Justification::ModusPonens {
                        antecedent: 1,
                        implication: 1,
                    },
                },
            ],
        };
        assert_eq!(
            check_proof(&proof),
            CheckResult::Rejected {
                line: 2,
                reason: RejectReason::MpMismatch
            }
        );
    }

    #[test]
    fn rejects_forward_reference() {
        let proof = HilbertProof {
            system: System::GlpOmega,
            lines: vec![ProofLine {
                formula: fml("[0]p"),
                justification: Justification::Necessitation {
                    premise: 1,
                    index: OrdinalNotation::zero(),
                },
            }],
        };
        assert_eq!(
            check_proof(&proof),
            CheckResult::Rejected {
                line: 1,
                reason: RejectReason::BadLineRef
            }
        );
    }

    #[test]
    fn rejects_loeb_rule_outside_glblack() {
        let mut b = ProofBuilder::new(System::GlBlack);
        let h = b.hyp(fml("[0]p->p"));
        b.loeb(h);
        let mut proof = b.finish();
        assert_eq!(check_proof(&proof), CheckResult::Accepted);
        proof.system = System::GlpOmega;
        assert_eq!(
            check_proof(&proof),
            CheckResult::Rejected {
                line: 2,
                reason: RejectReason::LoebNotAllowed
            }
        );
    }

    #[test]
    fn rejects_transfinite_index_in_finite_system() {
        let mut b = ProofBuilder::new(System::GlpOmega);
        b.axiom(SchemaName::Tautology, fml("[w]p->[w]p"));
        assert_eq!(
            check_proof(&b.finish()),
            CheckResult::Rejected {
                line: 1,
                reason: RejectReason::IndexNotInSystem
            }
        );
    }

    #[test]
    fn lift_proof_examples() {
        // One-line monotonicity instance <1>p -> <0>p lifted along [1, w].
        let map = CondensationMap::from_levels(vec![
            ordinal::parse_ordinal("1").unwrap(),
            OrdinalNotation::omega(),
        ])
        .unwrap();
        let mut b = ProofBuilder::new(System::GlpOmega);
        b.axiom(SchemaName::Monotone, fml("<1>p -> <0>p"));
        let lifted = lift_proof(&b.finish(), &map).unwrap();
        assert_eq!(lifted.system, System::GlpPrec);
        assert_eq!(lifted.conclusion(), Some(&fml("<w>p -> <1>p")));
        assert_eq!(check_proof(&lifted), CheckResult::Accepted);

        // Necessitation index is mapped too.
        let map_w = CondensationMap::from_levels(vec![OrdinalNotation::omega()]).unwrap();
        let mut b = ProofBuilder::new(System::GlpOmega);
        let t = b.axiom(SchemaName::Tautology, fml("p->p"));
        b.nec(t, OrdinalNotation::zero());
        let lifted = lift_proof(&b.finish(), &map_w).unwrap();
        assert_eq!(lifted.conclusion(), Some(&fml("[w](p->p)")));
        assert_eq!(check_proof(&lifted), CheckResult::Accepted);

        // Out-of-range index.
        let map01 =
            CondensationMap::from_levels(vec![OrdinalNotation::zero(), OrdinalNotation::nat(1)])
                .unwrap();
        let mut b = ProofBuilder::new(System::GlpOmega);
        b.axiom(SchemaName::Tautology, fml("[2]p->[2]p"));
        assert!(matches!(
            lift_proof(&b.finish(), &map01),
            Err(LiftProofError::Index(IndexError::OutOfRange { .. }))
        ));
    }

    #[test]
    fn proof_json_round_trip() {
        let mut b = ProofBuilder::new(System::GlBlack);
        let h = b.hyp(fml("[1]p->p"));
        let g = b.axiom(SchemaName::Glb1, fml("[0]p->[1]p"));
        let s = b.axiom(
            SchemaName::Tautology,
            fml("([0]p->[1]p)->(([1]p->p)->([0]p->p))"),
        );
        let i = b.mp(g, s);
        let j = b.mp(h, i);
        b.loeb(j);
        let proof = b.finish();
        let text = proof_to_json(&proof);
        let back = proof_from_json(&text).unwrap();
        assert_eq!(back, proof);
    }

    proptest! {
        /// Schema matching only looks at structure, so renaming variables
        /// preserves recognition.
        #[test]
        fn recognition_is_stable_under_renaming(name in "[a-z][a-z0-9_]{0,4}") {
            let v = Formula::var(name);
            let w = OrdinalNotation::omega();
            let loeb = Formula::implies(
                Formula::boxed(w.clone(), Formula::implies(Formula::boxed(w.clone(), v.clone()), v.clone())),
                Formula::boxed(w.clone(), v.clone()),
            );
            prop_assert_eq!(recognize_axiom(&loeb, System::GlpPrec), Some(SchemaName::Loeb));
            let mono = Formula::implies(
                Formula::diamond(w.clone(), v.clone()),
                Formula::diamond(OrdinalNotation::nat(1), v.clone()),
            );
            prop_assert_eq!(recognize_axiom(&mono, System::GlpPrec), Some(SchemaName::Monotone));
        }
    }
}
