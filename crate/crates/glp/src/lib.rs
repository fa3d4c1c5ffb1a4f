//! Decision, refutation, and certification toolkit for polymodal
//! provability logic with transfinite modality indices.
//!
//! The pipeline condenses a formula's ordinal modalities down to an initial
//! segment of the naturals, relativizes it with the monotonicity-closure
//! formula `M+`, and either certifies theoremhood through recognized axiom
//! instances and checked Hilbert proofs (lifting finite-index proofs back
//! through the condensation map) or refutes the formula with an
//! exhaustively found finite countermodel whose evidence re-verifies.
//! Alongside sit ordinal notations in Cantor normal form, the frame theory
//! of the finite-index semantics, and a combinatorial simulator for the
//! Solovay-style path recursion.
//!
//! The `examples/` directory demonstrates each capability; the `glp` binary
//! exposes the same operations for scripting.

pub mod cli;
pub mod corpus;
pub mod decide;
pub mod hilbert;
pub mod kripke;
pub mod ordinal;
pub mod parse;
pub mod solovay;
pub mod syntax;

pub use decide::{decide, DecisionOutcome};
pub use kripke::JModel;
pub use ordinal::OrdinalNotation;
pub use syntax::Formula;
