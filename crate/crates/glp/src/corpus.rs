//! The shipped proof corpus: axiom-instance one-liners for every schema,
//! the derivation of the transitivity axiom from Löb and distribution, the
//! index-shift derivation obtained by contraposing monotonicity, a small
//! distribution derivation in `J`, and the two-flavor simulation showing
//! the Löb rule for the black box.

use crate::hilbert::{HilbertProof, ProofBuilder, SchemaName, System};
use crate::ordinal::OrdinalNotation;
use crate::syntax::Formula;

fn box_at(n: u64, f: Formula) -> Formula {
    Formula::boxed(OrdinalNotation::nat(n), f)
}

/// The syllogism tautology `(x->y) -> ((y->z) -> (x->z))`.
fn syll(x: Formula, y: Formula, z: Formula) -> Formula {
    Formula::implies(
        Formula::implies(x.clone(), y.clone()),
        Formula::implies(Formula::implies(y, z.clone()), Formula::implies(x, z)),
    )
}

/// `[0]a -> [0][0]a` from Löb and distribution, via `c := a ∧ [0]a`.
pub fn transitivity_proof(a: Formula) -> HilbertProof {
    let c = Formula::and(a.clone(), box_at(0, a.clone()));
    let box_c = box_at(0, c.clone());
    let box_a = box_at(0, a.clone());
    let zero = OrdinalNotation::zero();

    let mut b = ProofBuilder::new(System::GlpOmega);
    let l1 = b.axiom(
        SchemaName::Tautology,
        Formula::implies(c.clone(), a.clone()),
    );
    let l2 = b.nec(l1, zero.clone());
    let l3 = b.axiom(
        SchemaName::K,
        Formula::implies(
            box_at(0, Formula::implies(c.clone(), a.clone())),
            Formula::implies(box_c.clone(), box_a.clone()),
        ),
    );
    let l4 = b.mp(l2, l3); // [0]c -> [0]a
    let l5 = b.axiom(
        SchemaName::Tautology,
        Formula::implies(
            Formula::implies(box_c.clone(), box_a.clone()),
            Formula::implies(a.clone(), Formula::implies(box_c.clone(), c.clone())),
        ),
    );
    let l6 = b.mp(l4, l5); // a -> ([0]c -> c)
    let l7 = b.nec(l6, zero.clone());
    let lob_premise = Formula::implies(box_c.clone(), c.clone());
    let l8 = b.axiom(
        SchemaName::K,
        Formula::implies(
            box_at(0, Formula::implies(a.clone(), lob_premise.clone())),
            Formula::implies(box_a.clone(), box_at(0, lob_premise.clone())),
        ),
    );
    let l9 = b.mp(l7, l8); // [0]a -> [0]([0]c -> c)
    let l10 = b.axiom(
        SchemaName::Loeb,
        Formula::implies(box_at(0, lob_premise.clone()), box_c.clone()),
    );
    let l11 = b.axiom(
        SchemaName::Tautology,
        syll(box_a.clone(), box_at(0, lob_premise), box_c.clone()),
    );
    let l12 = b.mp(l9, l11);
    let l13 = b.mp(l10, l12); // [0]a -> [0]c
    let l14 = b.axiom(
        SchemaName::Tautology,
        Formula::implies(c.clone(), box_a.clone()),
    );
    let l15 = b.nec(l14, zero);
    let boxbox_a = box_at(0, box_a.clone());
    let l16 = b.axiom(
        SchemaName::K,
        Formula::implies(
            box_at(0, Formula::implies(c, box_a.clone())),
            Formula::implies(box_c.clone(), boxbox_a.clone()),
        ),
    );
    let l17 = b.mp(l15, l16); // [0]c -> [0][0]a
    let l18 = b.axiom(SchemaName::Tautology, syll(box_a, box_c, boxbox_a));
    let l19 = b.mp(l13, l18);
    b.mp(l17, l19); // [0]a -> [0][0]a
    b.finish()
}

/// `[0]p -> [1]p` by contraposing the monotonicity instance `<1>~p -> <0>~p`.
pub fn index_shift_proof() -> HilbertProof {
    let p = Formula::var("p");
    let np = Formula::not(p.clone());
    let nnp = Formula::not(np.clone());
    let b0 = box_at(0, nnp.clone());
    let b1 = box_at(1, nnp.clone());

    let mut b = ProofBuilder::new(System::GlpOmega);
    let l1 = b.axiom(
        SchemaName::Monotone,
        Formula::implies(
            Formula::diamond(OrdinalNotation::nat(1), np.clone()),
            Formula::diamond(OrdinalNotation::zero(), np.clone()),
        ),
    );
    let l2 = b.axiom(
        SchemaName::Tautology,
        Formula::implies(
            Formula::implies(
                Formula::diamond(OrdinalNotation::nat(1), np.clone()),
                Formula::diamond(OrdinalNotation::zero(), np),
            ),
            Formula::implies(b0.clone(), b1.clone()),
        ),
    );
    let l3 = b.mp(l1, l2); // [0]~~p -> [1]~~p
    let l4 = b.axiom(
        SchemaName::Tautology,
        Formula::implies(p.clone(), nnp.clone()),
    );
    let l5 = b.nec(l4, OrdinalNotation::zero());
    let l6 = b.axiom(
        SchemaName::K,
        Formula::implies(
            box_at(0, Formula::implies(p.clone(), nnp.clone())),
            Formula::implies(box_at(0, p.clone()), b0.clone()),
        ),
    );
    let l7 = b.mp(l5, l6); // [0]p -> [0]~~p
    let l8 = b.axiom(
        SchemaName::Tautology,
        Formula::implies(nnp.clone(), p.clone()),
    );
    let l9 = b.nec(l8, OrdinalNotation::nat(1));
    let l10 = b.axiom(
        SchemaName::K,
        Formula::implies(
            box_at(1, Formula::implies(nnp, p.clone())),
            Formula::implies(b1.clone(), box_at(1, p.clone())),
        ),
    );
    let l11 = b.mp(l9, l10); // [1]~~p -> [1]p
    let l12 = b.axiom(
        SchemaName::Tautology,
        syll(box_at(0, p.clone()), b0, b1.clone()),
    );
    let l13 = b.mp(l7, l12);
    let l14 = b.mp(l3, l13); // [0]p -> [1]~~p
    let l15 = b.axiom(
        SchemaName::Tautology,
        syll(box_at(0, p.clone()), b1, box_at(1, p)),
    );
    let l16 = b.mp(l14, l15);
    b.mp(l11, l16); // [0]p -> [1]p
    b.finish()
}

/// The Löb rule for the black box: from the hypothesis `[1]p -> p`, derive
/// `p` by passing through the plain box and its Löb rule.
pub fn black_box_loeb_simulation() -> HilbertProof {
    let p = Formula::var("p");
    let mut b = ProofBuilder::new(System::GlBlack);
    let h = b.hyp(Formula::implies(box_at(1, p.clone()), p.clone()));
    let g = b.axiom(
        SchemaName::Glb1,
        Formula::implies(box_at(0, p.clone()), box_at(1, p.clone())),
    );
    let s = b.axiom(
        SchemaName::Tautology,
        syll(box_at(0, p.clone()), box_at(1, p.clone()), p.clone()),
    );
    let i = b.mp(g, s);
    let j = b.mp(h, i); // [0]p -> p
    b.loeb(j); // p
    b.finish()
}

/// Distribution exercise in `J`: `[0]p -> [0](q -> p)`.
pub fn j_distribution_proof() -> HilbertProof {
    let p = Formula::var("p");
    let q = Formula::var("q");
    let weaken = Formula::implies(p.clone(), Formula::implies(q, p.clone()));
    let mut b = ProofBuilder::new(System::J);
    let l1 = b.axiom(SchemaName::Tautology, weaken.clone());
    let l2 = b.nec(l1, OrdinalNotation::zero());
    let l3 = b.axiom(
        SchemaName::K,
        Formula::implies(
            box_at(0, weaken.clone()),
            Formula::implies(box_at(0, p.clone()), {
                let Formula::Implies(_, qc) = &weaken else {
                    unreachable!()
                };
                box_at(0, (**qc).clone())
            }),
        ),
    );
    b.mp(l2, l3);
    b.finish()
}

/// A necessitated tautology under a transfinite index: `[w](p -> p)`.
pub fn boxed_tautology_proof() -> HilbertProof {
    let p = Formula::var("p");
    let mut b = ProofBuilder::new(System::GlpPrec);
    let l1 = b.axiom(SchemaName::Tautology, Formula::implies(p.clone(), p));
    b.nec(l1, OrdinalNotation::omega());
    b.finish()
}

fn one_liner(system: System, schema: SchemaName, f: Formula) -> HilbertProof {
    let mut b = ProofBuilder::new(system);
    b.axiom(schema, f);
    b.finish()
}

/// Every proof shipped with the library.
pub fn builtin_proofs() -> Vec<HilbertProof> {
    use crate::syntax::parse_formula;
    let fml = |s: &str| parse_formula(s).expect("corpus formula");

    let mut proofs = vec![
        // One axiom instance per schema.
        one_liner(System::GlpPrec, SchemaName::Tautology, fml("p->p")),
        one_liner(
            System::GlpPrec,
            SchemaName::K,
            fml("[w](p->q) -> ([w]p -> [w]q)"),
        ),
        one_liner(
            System::GlpPrec,
            SchemaName::Loeb,
            fml("[w]([w]p -> p) -> [w]p"),
        ),
        one_liner(System::GlpPrec, SchemaName::Monotone, fml("<w>p -> <1>p")),
        one_liner(
            System::GlpPrec,
            SchemaName::NegIntrospect,
            fml("<1>p -> [w]<1>p"),
        ),
        one_liner(System::J, SchemaName::J6, fml("[0]p -> [1][0]p")),
        one_liner(System::J, SchemaName::J7, fml("[0]p -> [0][1]p")),
        one_liner(System::GlBlack, SchemaName::Glb1, fml("[0]p -> [1]p")),
        one_liner(
            System::GlBlack,
            SchemaName::Glb2,
            fml("[1](p->q) -> ([1]p -> [1]q)"),
        ),
        one_liner(System::GlBlack, SchemaName::Glb3, fml("[1]p -> [1][1]p")),
        boxed_tautology_proof(),
        index_shift_proof(),
        j_distribution_proof(),
        black_box_loeb_simulation(),
    ];
    for body in [fml("p"), fml("q"), fml("p->q")] {
        proofs.push(transitivity_proof(body));
    }
    proofs
}
