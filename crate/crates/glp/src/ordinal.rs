//! Ordinal notations below ε₀ in Cantor normal form.
//!
//! A notation is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves notations) and positive integer
//! coefficients; the empty sum is 0. Notations are kept canonical at all
//! times, so structural equality coincides with ordinal equality and `Ord`
//! realizes the order relation on ordinals.

use std::cmp::Ordering;
use std::fmt;

use crate::parse::{Cursor, ParseError};

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OrdinalNotation {
    terms: Vec<(OrdinalNotation, u64)>,
}

/// Error from [`OrdinalNotation::from_cnf_terms`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CnfError {
    #[error("coefficient must be positive")]
    ZeroCoefficient,
    #[error("exponents must be strictly decreasing")]
    NotDecreasing,
}

impl OrdinalNotation {
    /// The ordinal 0 (empty sum).
    pub fn zero() -> Self {
        OrdinalNotation { terms: Vec::new() }
    }

    /// The finite ordinal `n`.
    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalNotation {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    /// The ordinal ω.
    pub fn omega() -> Self {
        Self::omega_pow(Self::nat(1))
    }

    /// The ordinal `w^exp`.
    pub fn omega_pow(exp: OrdinalNotation) -> Self {
        OrdinalNotation {
            terms: vec![(exp, 1)],
        }
    }

    /// Builds a notation from explicit CNF terms, validating canonicity.
    pub fn from_cnf_terms(terms: Vec<(OrdinalNotation, u64)>) -> Result<Self, CnfError> {
        for pair in terms.windows(2) {
            if pair[0].0 <= pair[1].0 {
                return Err(CnfError::NotDecreasing);
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(CnfError::ZeroCoefficient);
        }
        Ok(OrdinalNotation { terms })
    }

    /// The CNF terms, leading term first.
    pub fn terms(&self) -> &[(OrdinalNotation, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The finite value of this notation, if it is a natural number.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// Adds `w^exp * coeff` on the right, in the sense of ordinal addition:
    /// trailing terms with smaller exponents are absorbed, equal exponents
    /// merge. Keeps the notation canonical.
    fn add_term(&mut self, exp: OrdinalNotation, coeff: u64) -> Result<(), &'static str> {
        if coeff == 0 {
            return Err("coefficient must be positive");
        }
        while matches!(self.terms.last(), Some((e, _)) if *e < exp) {
            self.terms.pop();
        }
        match self.terms.last_mut() {
            Some((e, c)) if *e == exp => {
                *c = c.checked_add(coeff).ok_or("coefficient overflow")?;
            }
            _ => self.terms.push((exp, coeff)),
        }
        Ok(())
    }

    /// Returns `1 + self`: the identity on infinite ordinals, successor on
    /// finite ones.
    pub fn one_plus(&self) -> Self {
        match self.terms.first() {
            None => Self::nat(1),
            Some((e, c)) if e.is_zero() => Self::nat(c + 1),
            Some(_) => self.clone(),
        }
    }

    /// Left multiplication by ω: `w * (Σ w^bi * ci) = Σ w^(1+bi) * ci`.
    pub fn omega_left_multiply(&self) -> Self {
        OrdinalNotation {
            terms: self.terms.iter().map(|(e, c)| (e.one_plus(), *c)).collect(),
        }
    }

    /// True iff `w * self == self`, i.e. the least exponent is at least ω
    /// (vacuously for 0).
    pub fn is_omega_absorbing(&self) -> bool {
        match self.terms.last() {
            None => true,
            Some((e, _)) => *e >= Self::omega(),
        }
    }
}

impl PartialOrd for OrdinalNotation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalNotation {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            match ea.cmp(eb).then_with(|| ca.cmp(cb)) {
                Ordering::Equal => {}
                strict => return strict,
            }
        }
        // Equal prefix: any remaining terms only add to the longer side.
        self.terms.len().cmp(&other.terms.len())
    }
}

/// Comparison of two notations; `Less` realizes the order ≺.
pub fn compare(a: &OrdinalNotation, b: &OrdinalNotation) -> Ordering {
    a.cmp(b)
}

impl fmt::Display for OrdinalNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            match e.as_nat() {
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None if *e == Self::omega() => write!(f, "w^w")?,
                None => write!(f, "w^({e})")?,
            }
            if *c != 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

/// A pair ⟨ordinal, natural⟩, ordered by [`prec_prime`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OrdinalPair {
    pub first: OrdinalNotation,
    pub second: u64,
}

impl OrdinalPair {
    pub fn new(first: OrdinalNotation, second: u64) -> Self {
        OrdinalPair { first, second }
    }
}

impl fmt::Display for OrdinalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.first, self.second)
    }
}

/// The pairing order ≺′: first components compared by ≺, ties broken by the
/// naturals.
pub fn prec_prime(p: &OrdinalPair, q: &OrdinalPair) -> bool {
    p.first < q.first || (p.first == q.first && p.second < q.second)
}

/// Parses the ASCII ordinal grammar
/// `ord := term ('+' term)*; term := base ('*' nat)?;
/// base := '0' | nat | 'w' | 'w' '^' atom; atom := nat | 'w' | '(' ord ')'`.
/// Non-canonical sums are normalized (e.g. `w+w` parses as `w*2`).
pub fn parse_ordinal(text: &str) -> Result<OrdinalNotation, ParseError> {
    let mut cur = Cursor::new(text);
    let ord = parse_at(&mut cur)?;
    cur.finish()?;
    Ok(ord)
}

/// Parses an ordinal starting at the cursor; used by the formula parser for
/// modality indices.
pub(crate) fn parse_at(cur: &mut Cursor) -> Result<OrdinalNotation, ParseError> {
    let mut sum = OrdinalNotation::zero();
    loop {
        parse_term(cur, &mut sum)?;
        cur.skip_ws();
        if !cur.eat(b'+') {
            return Ok(sum);
        }
        cur.skip_ws();
    }
}

fn parse_term(cur: &mut Cursor, sum: &mut OrdinalNotation) -> Result<(), ParseError> {
    cur.skip_ws();
    let base_pos = cur.pos();
    let base = parse_base(cur)?;
    let coeff = if cur.eat(b'*') {
        let coeff_pos = cur.pos();
        let n = parse_nat(cur)?;
        if n == 0 {
            return Err(ParseError {
                pos: coeff_pos,
                message: "coefficient must be positive".into(),
            });
        }
        n
    } else {
        1
    };
    match base {
        Base::Zero => Ok(()),
        Base::Nat(n) => {
            let v = n.checked_mul(coeff).ok_or_else(|| ParseError {
                pos: base_pos,
                message: "coefficient overflow".into(),
            })?;
            if v > 0 {
                sum.add_term(OrdinalNotation::zero(), v)
                    .map_err(|m| ParseError {
                        pos: base_pos,
                        message: m.into(),
                    })?;
            }
            Ok(())
        }
        Base::OmegaPow(e) => sum.add_term(e, coeff).map_err(|m| ParseError {
            pos: base_pos,
            message: m.into(),
        }),
    }
}

enum Base {
    Zero,
    Nat(u64),
    OmegaPow(OrdinalNotation),
}

fn parse_base(cur: &mut Cursor) -> Result<Base, ParseError> {
    match cur.peek() {
        Some(b'w') => {
            cur.bump();
            if cur.eat(b'^') {
                let exp = parse_atom(cur)?;
                Ok(Base::OmegaPow(exp))
            } else {
                Ok(Base::OmegaPow(OrdinalNotation::nat(1)))
            }
        }
        Some(b) if b.is_ascii_digit() => {
            let n = parse_nat(cur)?;
            if n == 0 {
                Ok(Base::Zero)
            } else {
                Ok(Base::Nat(n))
            }
        }
        _ => Err(cur.error("expected ordinal")),
    }
}

fn parse_atom(cur: &mut Cursor) -> Result<OrdinalNotation, ParseError> {
    match cur.peek() {
        Some(b'w') => {
            cur.bump();
            Ok(OrdinalNotation::omega())
        }
        Some(b'(') => {
            cur.bump();
            let ord = parse_at(cur)?;
            cur.expect(b')')?;
            Ok(ord)
        }
        Some(b) if b.is_ascii_digit() => Ok(OrdinalNotation::nat(parse_nat(cur)?)),
        _ => Err(cur.error("expected exponent")),
    }
}

fn parse_nat(cur: &mut Cursor) -> Result<u64, ParseError> {
    let start = cur.pos();
    let mut value: u64 = 0;
    let mut seen = false;
    while let Some(b) = cur.peek() {
        if !b.is_ascii_digit() {
            break;
        }
        cur.bump();
        seen = true;
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add((b - b'0') as u64))
            .ok_or(ParseError {
                pos: start,
                message: "number too large".into(),
            })?;
    }
    if seen {
        Ok(value)
    } else {
        Err(cur.error("expected number"))
    }
}
