//! The decision pipeline: condense the input's transfinite indices away,
//! certify theoremhood through recognized axiom instances or checked corpus
//! proofs (lifting finite-index proofs back through the condensation map),
//! and otherwise search exhaustively for a finite countermodel of the
//! relativized formula. Refutations carry a model and world that re-verify;
//! exhausted bounds yield an explicit `Unknown`.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus;
use crate::hilbert::{
    check_proof, lift_proof, proof_from_json, proof_to_json, recognize_axiom, HilbertProof,
    SchemaName, System,
};
use crate::kripke::{enumerate_valuations, model_from_json, model_to_json, FrameSpace, JModel};
use crate::syntax::{condense, m_plus, Formula, IndexError};

/// What backs a `Theorem` verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TheoremEvidence {
    /// The formula instantiates an axiom schema of the transfinite system.
    AxiomInstance { schema: SchemaName },
    /// An accepted, hypothesis-free proof concluding the formula.
    Proof(HilbertProof),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecisionOutcome {
    Theorem {
        evidence: TheoremEvidence,
    },
    /// `world` satisfies the relativized negation on `model`.
    NonTheorem {
        model: JModel,
        world: usize,
    },
    Unknown {
        max_worlds: usize,
    },
}

impl DecisionOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            DecisionOutcome::Theorem { .. } => "Theorem",
            DecisionOutcome::NonTheorem { .. } => "NonTheorem",
            DecisionOutcome::Unknown { .. } => "Unknown",
        }
    }
}

/// A store of proofs usable as theoremhood certificates.
#[derive(Clone, Debug, Default)]
pub struct ProofCorpus {
    proofs: Vec<HilbertProof>,
}

impl ProofCorpus {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The corpus shipped with the library.
    pub fn builtin() -> Self {
        ProofCorpus {
            proofs: corpus::builtin_proofs(),
        }
    }

    pub fn push(&mut self, proof: HilbertProof) {
        self.proofs.push(proof);
    }

    pub fn iter(&self) -> impl Iterator<Item = &HilbertProof> {
        self.proofs.iter()
    }

    pub fn len(&self) -> usize {
        self.proofs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proofs.is_empty()
    }

    /// Accepted hypothesis-free proofs in `system` concluding `f`.
    fn certificates<'a>(
        &'a self,
        system: System,
        f: &'a Formula,
    ) -> impl Iterator<Item = &'a HilbertProof> {
        self.proofs.iter().filter(move |p| {
            p.system == system
                && !p.has_hypotheses()
                && p.conclusion() == Some(f)
                && check_proof(p).is_accepted()
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOptions {
    /// Largest model size the countermodel search will try.
    pub max_worlds: usize,
    /// Restrict the search to stratified frames.
    pub stratified_only: bool,
    /// Worker threads for the search; 1 means sequential.
    pub threads: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_worlds: 4,
            stratified_only: false,
            threads: 1,
        }
    }
}

/// Searches all valid J-models with up to `max_worlds` worlds for one
/// satisfying `M⁺(g) ∧ ¬g` somewhere; `g` must have finite indices. Returns
/// the first hit in enumeration order together with its smallest witness
/// world.
pub fn find_countermodel(
    g: &Formula,
    options: &DecideOptions,
) -> Result<Option<(JModel, usize)>, IndexError> {
    let target = search_target(g)?;
    let n_rels = relation_count_for(g)?;
    let vars: Vec<String> = g.variables().into_iter().collect();
    for worlds in 1..=options.max_worlds {
        let space = FrameSpace::new(worlds, n_rels);
        let hit = if options.threads > 1 {
            scan_space_parallel(&space, &vars, &target, options)
        } else {
            scan_space(&space, 0, space.len(), &vars, &target, options).map(|h| h.1)
        };
        if let Some((model, world)) = hit {
            return Ok(Some((model, world)));
        }
    }
    Ok(None)
}

/// `M⁺(g) ∧ ¬g`, the formula a countermodel world must satisfy.
fn search_target(g: &Formula) -> Result<Formula, IndexError> {
    Ok(Formula::and(m_plus(g)?, Formula::not(g.clone())))
}

/// Relations needed to evaluate `M⁺(g) ∧ ¬g`: one per index up to the
/// maximum occurring in `g`, and at least one (the relativization always
/// mentions index 0).
fn relation_count_for(g: &Formula) -> Result<usize, IndexError> {
    let mut max = 0;
    for m in g.modalities() {
        let n = m
            .as_nat()
            .ok_or(IndexError::NotFinite { index: m.clone() })?;
        max = max.max(n as usize);
    }
    Ok(max + 1)
}

/// A search result keyed by `(combination, valuation)` indices so hits
/// from different chunks compare in enumeration order.
type SearchHit = ((u64, u64), (JModel, usize));

/// Scans frame combinations `lo..hi` in order.
fn scan_space(
    space: &FrameSpace,
    lo: u64,
    hi: u64,
    vars: &[String],
    target: &Formula,
    options: &DecideOptions,
) -> Option<SearchHit> {
    for idx in lo..hi {
        let Some(frame) = space.frame_at(idx) else {
            continue;
        };
        if options.stratified_only && !frame.is_stratified() {
            continue;
        }
        for (val_idx, valuation) in enumerate_valuations(frame.world_count(), vars).enumerate() {
            let mut model = frame.clone();
            for (var, mask) in valuation {
                model.set_valuation(var, mask);
            }
            let sat = model
                .eval(target)
                .expect("search target fits the model signature");
            if sat != 0 {
                let world = sat.trailing_zeros() as usize;
                return Some(((idx, val_idx as u64), (model, world)));
            }
        }
    }
    None
}

/// Splits the combination space into contiguous chunks, scans them on worker
/// threads, and keeps the hit with the smallest key, which is exactly the
/// sequential answer.
fn scan_space_parallel(
    space: &FrameSpace,
    vars: &[String],
    target: &Formula,
    options: &DecideOptions,
) -> Option<(JModel, usize)> {
    let total = space.len();
    let threads = options.threads.min(total.max(1) as usize).max(1);
    let chunk = total.div_ceil(threads as u64);
    let best: Mutex<Option<SearchHit>> = Mutex::new(None);
    std::thread::scope(|scope| {
        for t in 0..threads as u64 {
            let lo = t * chunk;
            let hi = total.min(lo + chunk);
            let best = &best;
            scope.spawn(move || {
                if let Some(hit) = scan_space(space, lo, hi, vars, target, options) {
                    let mut guard = best.lock().unwrap();
                    if guard.as_ref().is_none_or(|(key, _)| hit.0 < *key) {
                        *guard = Some(hit);
                    }
                }
            });
        }
    });
    let result = best.into_inner().unwrap();
    result.map(|(_, hit)| hit)
}

/// Decides `f`: a recognized axiom instance or corpus certificate yields
/// `Theorem`; otherwise a countermodel for the condensation yields
/// `NonTheorem`; otherwise the bounds were exhausted.
pub fn decide(f: &Formula, corpus: &ProofCorpus, options: &DecideOptions) -> DecisionOutcome {
    if let Some(schema) = recognize_axiom(f, System::GlpPrec) {
        return DecisionOutcome::Theorem {
            evidence: TheoremEvidence::AxiomInstance { schema },
        };
    }
    let (g, map) = condense(f);
    if let Some(proof) = corpus.certificates(System::GlpPrec, f).next() {
        return DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(proof.clone()),
        };
    }
    for proof in corpus.certificates(System::GlpOmega, &g) {
        if let Ok(lifted) = lift_proof(proof, &map) {
            if check_proof(&lifted).is_accepted() && lifted.conclusion() == Some(f) {
                return DecisionOutcome::Theorem {
                    evidence: TheoremEvidence::Proof(lifted),
                };
            }
        }
    }
    match find_countermodel(&g, options).expect("condensed formulas have finite indices") {
        Some((model, world)) => DecisionOutcome::NonTheorem { model, world },
        None => DecisionOutcome::Unknown {
            max_worlds: options.max_worlds,
        },
    }
}

/// Independently re-checks an outcome's evidence against `f`.
pub fn verify_outcome(outcome: &DecisionOutcome, f: &Formula) -> bool {
    match outcome {
        DecisionOutcome::Theorem {
            evidence: TheoremEvidence::AxiomInstance { schema },
        } => crate::hilbert::matches_schema(f, *schema, System::GlpPrec),
        DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(proof),
        } => {
            proof.system == System::GlpPrec
                && !proof.has_hypotheses()
                && proof.conclusion() == Some(f)
                && check_proof(proof).is_accepted()
        }
        DecisionOutcome::NonTheorem { model, world } => {
            if !model.validate_j_frame().is_j_frame {
                return false;
            }
            let (g, _) = condense(f);
            let Ok(target) = search_target(&g) else {
                return false;
            };
            match model.eval(&target) {
                Ok(sat) => *world < model.world_count() && sat & (1 << world) != 0,
                Err(_) => false,
            }
        }
        DecisionOutcome::Unknown { .. } => true,
    }
}

/// Error reading the outcome serialization.
#[derive(Debug, Error)]
pub enum OutcomeFormatError {
    #[error("invalid outcome: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid outcome: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct OutcomeFile {
    status: String,
    evidence: EvidenceFile,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EvidenceFile {
    Axiom {
        axiom: String,
    },
    Proof {
        proof: serde_json::Value,
    },
    Model {
        model: serde_json::Value,
        world: usize,
    },
    Bounds {
        bounds: BoundsFile,
    },
}

#[derive(Serialize, Deserialize)]
struct BoundsFile {
    max_worlds: usize,
}

/// Serializes an outcome as `{status, evidence: {...}}`.
pub fn outcome_to_json(outcome: &DecisionOutcome) -> String {
    let evidence = match outcome {
        DecisionOutcome::Theorem {
            evidence: TheoremEvidence::AxiomInstance { schema },
        } => EvidenceFile::Axiom {
            axiom: schema.name().to_string(),
        },
        DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(proof),
        } => EvidenceFile::Proof {
            proof: serde_json::from_str(&proof_to_json(proof)).expect("proof json"),
        },
        DecisionOutcome::NonTheorem { model, world } => EvidenceFile::Model {
            model: serde_json::from_str(&model_to_json(model)).expect("model json"),
            world: *world,
        },
        DecisionOutcome::Unknown { max_worlds } => EvidenceFile::Bounds {
            bounds: BoundsFile {
                max_worlds: *max_worlds,
            },
        },
    };
    let file = OutcomeFile {
        status: outcome.status().to_string(),
        evidence,
    };
    serde_json::to_string_pretty(&file).expect("outcome serialization cannot fail")
}

/// Parses the outcome serialization.
pub fn outcome_from_json(text: &str) -> Result<DecisionOutcome, OutcomeFormatError> {
    let file: OutcomeFile = serde_json::from_str(text)?;
    let invalid = |m: &str| OutcomeFormatError::Invalid(m.to_string());
    match (file.status.as_str(), file.evidence) {
        ("Theorem", EvidenceFile::Axiom { axiom }) => Ok(DecisionOutcome::Theorem {
            evidence: TheoremEvidence::AxiomInstance {
                schema: SchemaName::from_name(&axiom).ok_or_else(|| invalid("unknown schema"))?,
            },
        }),
        ("Theorem", EvidenceFile::Proof { proof }) => Ok(DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(
                proof_from_json(&proof.to_string())
                    .map_err(|e| OutcomeFormatError::Invalid(e.to_string()))?,
            ),
        }),
        ("NonTheorem", EvidenceFile::Model { model, world }) => Ok(DecisionOutcome::NonTheorem {
            model: model_from_json(&model.to_string())
                .map_err(|e| OutcomeFormatError::Invalid(e.to_string()))?,
            world,
        }),
        ("Unknown", EvidenceFile::Bounds { bounds }) => Ok(DecisionOutcome::Unknown {
            max_worlds: bounds.max_worlds,
        }),
        _ => Err(invalid("status does not match evidence")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn fml(text: &str) -> Formula {
        parse_formula(text).expect(text)
    }

    fn decide_default(text: &str) -> DecisionOutcome {
        decide(
            &fml(text),
            &ProofCorpus::builtin(),
            &DecideOptions::default(),
        )
    }

    #[test]
    fn axioms_are_theorems() {
        let out = decide_default("[w]([w]p -> p) -> [w]p");
        assert_eq!(
            out,
            DecisionOutcome::Theorem {
                evidence: TheoremEvidence::AxiomInstance {
                    schema: SchemaName::Loeb
                }
            }
        );
        assert!(verify_outcome(&out, &fml("[w]([w]p -> p) -> [w]p")));

        let out = decide_default("<w>p -> [w^w]<w>p");
        assert_eq!(
            out,
            DecisionOutcome::Theorem {
                evidence: TheoremEvidence::AxiomInstance {
                    schema: SchemaName::NegIntrospect
                }
            }
        );
    }

    #[test]
    fn diamond_top_is_refuted_on_one_world() {
        let f = fml("<0>T");
        let out = decide_default("<0>T");
        let DecisionOutcome::NonTheorem { ref model, world } = out else {
            panic!("expected a refutation, got {out:?}");
        };
        assert_eq!(model.world_count(), 1);
        assert_eq!(world, 0);
        assert!(verify_outcome(&out, &f));
    }

    #[test]
    fn index_monotone_implication_needs_two_worlds() {
        // First hit frozen by hand-tracing the enumeration order: the frame
        // 0 <_0 1 with empty relation 1 and p nowhere fails [1]p -> [0]p
        // at world 1.
        let f = fml("[1]p -> [0]p");
        let out = decide_default("[1]p -> [0]p");
        let DecisionOutcome::NonTheorem { ref model, world } = out else {
            panic!("expected a refutation, got {out:?}");
        };
        assert_eq!(model.world_count(), 2);
        assert_eq!(model.edges(0), vec![(0, 1)]);
        assert_eq!(model.edges(1), vec![]);
        assert_eq!(model.var_mask("p"), 0);
        assert_eq!(world, 1);
        assert!(verify_outcome(&out, &f));
    }

    #[test]
    fn consistency_of_diamond_top() {
        let out = decide_default("~<1>T");
        let DecisionOutcome::NonTheorem { ref model, world } = out else {
            panic!("expected a refutation, got {out:?}");
        };
        assert!(model.world_count() <= 2);
        assert!(verify_outcome(&out, &fml("~<1>T")));
        let _ = world;
    }

    #[test]
    fn loeb_has_no_small_countermodel() {
        let g = fml("[0]([0]p -> p) -> [0]p");
        let options = DecideOptions {
            max_worlds: 3,
            ..DecideOptions::default()
        };
        assert_eq!(find_countermodel(&g, &options).unwrap(), None);
    }

    #[test]
    fn corpus_certificate_lifts_through_condensation() {
        // [w]q -> [w][w]q condenses to [0]q -> [0][0]q, which the corpus
        // proves; the lifted proof certifies the original.
        let f = fml("[w]q -> [w][w]q");
        let out = decide_default("[w]q -> [w][w]q");
        let DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(ref proof),
        } = out
        else {
            panic!("expected a lifted proof, got {}", out.status());
        };
        assert_eq!(proof.system, System::GlpPrec);
        assert_eq!(proof.conclusion(), Some(&f));
        assert!(verify_outcome(&out, &f));
    }

    #[test]
    fn unknown_when_bounds_exhausted() {
        // A theorem the certificate store does not cover: distribution
        // composed with itself.
        let out = decide_default("[0](p->p)");
        assert_eq!(out, DecisionOutcome::Unknown { max_worlds: 4 });
        assert!(verify_outcome(&out, &fml("[0](p->p)")));
    }

    #[test]
    fn verify_rejects_tampered_evidence() {
        let f = fml("[w]q -> [w][w]q");
        let out = decide_default("[w]q -> [w][w]q");
        let DecisionOutcome::Theorem {
            evidence: TheoremEvidence::Proof(proof),
        } = out
        else {
            panic!("expected a proof");
        };
        let mut tampered = proof;
        tampered.lines[3].formula = fml("F");
        assert!(!verify_outcome(
            &DecisionOutcome::Theorem {
                evidence: TheoremEvidence::Proof(tampered)
            },
            &f
        ));

        // A model whose witness world fails the relativized negation.
        let f = fml("<0>T");
        let out = decide_default("<0>T");
        let DecisionOutcome::NonTheorem { model, .. } = out else {
            panic!("expected a refutation");
        };
        let mut m = model;
        m.add_edge(0, 0, 0); // break the frame
        assert!(!verify_outcome(
            &DecisionOutcome::NonTheorem { model: m, world: 0 },
            &f
        ));
    }

    #[test]
    fn renamed_modalities_share_status() {
        for (a, b) in [
            ("[1]p -> [w]p", "[w]p -> [w^w]p"),
            ("<w>T -> <1>T", "<w^w>T -> <w>T"),
        ] {
            let oa = decide_default(a);
            let ob = decide_default(b);
            assert_eq!(oa.status(), ob.status(), "{a} vs {b}");
        }
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let sequential = DecideOptions {
            max_worlds: 3,
            ..DecideOptions::default()
        };
        let parallel = DecideOptions {
            threads: 4,
            ..sequential
        };
        for text in ["[1]p -> [0]p", "p -> [0]<0>p", "[0]([0]p->p) -> [0]p"] {
            let g = fml(text);
            assert_eq!(
                find_countermodel(&g, &sequential).unwrap(),
                find_countermodel(&g, &parallel).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn outcome_json_round_trip() {
        for text in [
            "<0>T",
            "[w]([w]p -> p) -> [w]p",
            "[w]q -> [w][w]q",
            "[0](p->p)",
        ] {
            let out = decide_default(text);
            let json = outcome_to_json(&out);
            let back = outcome_from_json(&json).unwrap();
            assert_eq!(back, out, "{text}");
        }
    }
}
