//! Modal formulas over ⊥, →, and ordinal-indexed boxes.
//!
//! The core AST has exactly four constructors; negation, conjunction,
//! disjunction, ⊤, and diamonds are sugar expanded at construction time
//! (`<e>f` is `~[e]~f`, `T` is `~F`). The module also provides condensation
//! of transfinite modality indices down to an initial segment of the
//! naturals, the inverse lifting, and the monotonicity-closure formulas
//! `M`/`M⁺` used to reduce provability questions to the finite-index logic.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ordinal::{self, OrdinalNotation};
use crate::parse::{Cursor, ParseError};

/// A modal formula in core form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Formula {
    Bottom,
    Var(String),
    Implies(Box<Formula>, Box<Formula>),
    Box(OrdinalNotation, Box<Formula>),
}

impl Formula {
    pub fn bottom() -> Self {
        Formula::Bottom
    }

    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn implies(antecedent: Formula, consequent: Formula) -> Self {
        Formula::Implies(Box::new(antecedent), Box::new(consequent))
    }

    pub fn boxed(index: OrdinalNotation, body: Formula) -> Self {
        Formula::Box(index, Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Self::implies(f, Self::bottom())
    }

    pub fn top() -> Self {
        Self::not(Self::bottom())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Self::not(Self::implies(a, Self::not(b)))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Self::implies(Self::not(a), b)
    }

    pub fn diamond(index: OrdinalNotation, body: Formula) -> Self {
        Self::not(Self::boxed(index, Self::not(body)))
    }

    /// Right-associated conjunction of `items`; the empty conjunction is ⊤.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Self {
        let mut items: Vec<Formula> = items.into_iter().collect();
        match items.pop() {
            None => Self::top(),
            Some(last) => items
                .into_iter()
                .rev()
                .fold(last, |acc, f| Self::and(f, acc)),
        }
    }

    /// All subtrees of the core AST, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut set = BTreeSet::new();
        self.collect_subformulas(&mut set);
        set
    }

    fn collect_subformulas(&self, set: &mut BTreeSet<Formula>) {
        set.insert(self.clone());
        match self {
            Formula::Bottom | Formula::Var(_) => {}
            Formula::Implies(a, b) => {
                a.collect_subformulas(set);
                b.collect_subformulas(set);
            }
            Formula::Box(_, f) => f.collect_subformulas(set),
        }
    }

    /// The box indices occurring in the formula, sorted and deduplicated.
    pub fn modalities(&self) -> Vec<OrdinalNotation> {
        let mut set = BTreeSet::new();
        self.collect_modalities(&mut set);
        set.into_iter().collect()
    }

    fn collect_modalities(&self, set: &mut BTreeSet<OrdinalNotation>) {
        match self {
            Formula::Bottom | Formula::Var(_) => {}
            Formula::Implies(a, b) => {
                a.collect_modalities(set);
                b.collect_modalities(set);
            }
            Formula::Box(i, f) => {
                set.insert(i.clone());
                f.collect_modalities(set);
            }
        }
    }

    /// The propositional variables occurring in the formula.
    pub fn variables(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, set: &mut BTreeSet<String>) {
            match f {
                Formula::Bottom => {}
                Formula::Var(v) => {
                    set.insert(v.clone());
                }
                Formula::Implies(a, b) => {
                    walk(a, set);
                    walk(b, set);
                }
                Formula::Box(_, g) => walk(g, set),
            }
        }
        let mut set = BTreeSet::new();
        walk(self, &mut set);
        set
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bottom => write!(f, "F"),
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Implies(a, b) => write!(f, "({a}->{b})"),
            Formula::Box(i, g) => write!(f, "[{i}]{g}"),
        }
    }
}

/// The strictly increasing sequence λ₀ ≺ … ≺ λ_N of modalities replaced by
/// the indices 0..=N during condensation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CondensationMap {
    levels: Vec<OrdinalNotation>,
}

impl CondensationMap {
    /// Builds a map from an ordered level list; fails unless strictly
    /// increasing.
    pub fn from_levels(levels: Vec<OrdinalNotation>) -> Option<Self> {
        if levels.windows(2).all(|w| w[0] < w[1]) {
            Some(CondensationMap { levels })
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&OrdinalNotation> {
        self.levels.get(index)
    }

    pub fn index_of(&self, level: &OrdinalNotation) -> Option<usize> {
        self.levels.binary_search(level).ok()
    }

    pub fn levels(&self) -> &[OrdinalNotation] {
        &self.levels
    }
}

impl fmt::Display for CondensationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Replaces the i-th smallest modality of `f` by the index `i` throughout.
pub fn condense(f: &Formula) -> (Formula, CondensationMap) {
    let map = CondensationMap {
        levels: f.modalities(),
    };
    fn rewrite(f: &Formula, map: &CondensationMap) -> Formula {
        match f {
            Formula::Bottom | Formula::Var(_) => f.clone(),
            Formula::Implies(a, b) => Formula::implies(rewrite(a, map), rewrite(b, map)),
            Formula::Box(i, g) => {
                let pos = map.index_of(i).expect("modality present in its own map");
                Formula::boxed(OrdinalNotation::nat(pos as u64), rewrite(g, map))
            }
        }
    }
    (rewrite(f, &map), map)
}

/// Error from [`lift`] and the relativization operators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("box index {index} is not a finite ordinal")]
    NotFinite { index: OrdinalNotation },
    #[error("box index {index} out of range for a map of length {len}")]
    OutOfRange { index: u64, len: usize },
}

/// Replaces each finite box index `i` of `f` by the i-th level of `map`;
/// inverse of [`condense`] on its image.
pub fn lift(f: &Formula, map: &CondensationMap) -> Result<Formula, IndexError> {
    match f {
        Formula::Bottom | Formula::Var(_) => Ok(f.clone()),
        Formula::Implies(a, b) => Ok(Formula::implies(lift(a, map)?, lift(b, map)?)),
        Formula::Box(i, g) => {
            let n = i
                .as_nat()
                .ok_or_else(|| IndexError::NotFinite { index: i.clone() })?;
            let level = map
                .get(n as usize)
                .ok_or(IndexError::OutOfRange {
                    index: n,
                    len: map.len(),
                })?
                .clone();
            Ok(Formula::boxed(level, lift(g, map)?))
        }
    }
}

/// Collects the finite indices of `f`, failing on any transfinite one, and
/// returns the maximal index (0 when the formula is box-free).
fn max_finite_index(f: &Formula) -> Result<u64, IndexError> {
    let mut max = 0;
    for m in f.modalities() {
        let n = m
            .as_nat()
            .ok_or(IndexError::NotFinite { index: m.clone() })?;
        max = max.max(n);
    }
    Ok(max)
}

/// The monotonicity closure `M(f)`: the conjunction of `[n]x -> [m]x` for
/// every boxed subformula `[n]x` of `f` and every `m` with `n < m <= N`,
/// where `N` is the maximal index of `f`. Conjuncts are ordered by the
/// structural order on the boxed subformula, then by `m`.
pub fn big_m(f: &Formula) -> Result<Formula, IndexError> {
    Ok(Formula::conjunction(big_m_conjuncts(f)?))
}

fn big_m_conjuncts(f: &Formula) -> Result<Vec<Formula>, IndexError> {
    let n_max = max_finite_index(f)?;
    let mut conjuncts = Vec::new();
    for sub in f.subformulas() {
        if let Formula::Box(i, body) = &sub {
            let n = i.as_nat().expect("finite index checked above");
            for m in n + 1..=n_max {
                conjuncts.push(Formula::implies(
                    sub.clone(),
                    Formula::boxed(OrdinalNotation::nat(m), (**body).clone()),
                ));
            }
        }
    }
    Ok(conjuncts)
}

/// The top-level conjuncts `[M(f), [0]M(f), ..., [N]M(f)]` of `M⁺(f)`;
/// `N` is 0 for box-free `f`.
pub fn m_plus_parts(f: &Formula) -> Result<Vec<Formula>, IndexError> {
    let n_max = max_finite_index(f)?;
    let m = big_m(f)?;
    let mut parts = vec![m.clone()];
    for i in 0..=n_max {
        parts.push(Formula::boxed(OrdinalNotation::nat(i), m.clone()));
    }
    Ok(parts)
}

/// The relativization formula `M⁺(f) = M(f) ∧ [0]M(f) ∧ … ∧ [N]M(f)`.
pub fn m_plus(f: &Formula) -> Result<Formula, IndexError> {
    Ok(Formula::conjunction(m_plus_parts(f)?))
}

/// Parses the ASCII formula grammar: variables `[a-z][a-z0-9_]*`, `~`, `&`,
/// `|`, right-associative `->`, `F`, `T`, and modalities `[ord]` / `<ord>`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text);
    let f = parse_implication(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

fn parse_implication(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = parse_disjunction(cur)?;
    cur.skip_ws();
    if cur.eat(b'-') {
        cur.expect(b'>')?;
        let rhs = parse_implication(cur)?;
        Ok(Formula::implies(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn parse_disjunction(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = parse_conjunction(cur)?;
    loop {
        cur.skip_ws();
        if cur.eat(b'|') {
            f = Formula::or(f, parse_conjunction(cur)?);
        } else {
            return Ok(f);
        }
    }
}

fn parse_conjunction(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut f = parse_unary(cur)?;
    loop {
        cur.skip_ws();
        if cur.eat(b'&') {
            f = Formula::and(f, parse_unary(cur)?);
        } else {
            return Ok(f);
        }
    }
}

fn parse_unary(cur: &mut Cursor) -> Result<Formula, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'~') => {
            cur.bump();
            Ok(Formula::not(parse_unary(cur)?))
        }
        Some(b'[') => {
            cur.bump();
            cur.skip_ws();
            let index = ordinal::parse_at(cur)?;
            cur.skip_ws();
            cur.expect(b']')?;
            Ok(Formula::boxed(index, parse_unary(cur)?))
        }
        Some(b'<') => {
            cur.bump();
            cur.skip_ws();
            let index = ordinal::parse_at(cur)?;
            cur.skip_ws();
            cur.expect(b'>')?;
            Ok(Formula::diamond(index, parse_unary(cur)?))
        }
        _ => parse_atom(cur),
    }
}

fn parse_atom(cur: &mut Cursor) -> Result<Formula, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'F') => {
            cur.bump();
            Ok(Formula::bottom())
        }
        Some(b'T') => {
            cur.bump();
            Ok(Formula::top())
        }
        Some(b'(') => {
            cur.bump();
            let f = parse_implication(cur)?;
            cur.skip_ws();
            cur.expect(b')')?;
            Ok(f)
        }
        Some(b) if b.is_ascii_lowercase() => {
            let mut name = String::new();
            name.push(cur.bump().unwrap() as char);
            while let Some(b) = cur.peek() {
                if b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_' {
                    name.push(b as char);
                    cur.bump();
                } else {
                    break;
                }
            }
            Ok(Formula::var(name))
        }
        _ => Err(cur.error("expected formula")),
    }
}
