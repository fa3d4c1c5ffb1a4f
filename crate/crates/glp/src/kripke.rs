//! Finite multi-relational Kripke models with transitive well-founded
//! relations, the frame conditions that make the finite-index logic sound,
//! derived relations and stratification, bitset model checking, root
//! adjunction, and exhaustive enumeration of small valid frames.
//!
//! Worlds are `0..worlds` and relations store, for every world `w`, the
//! bitmask of worlds strictly below `w`; a pair `(u, w)` in relation `n`
//! means `u <_n w`, i.e. `u` is accessible from `w` by modality `n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula, IndexError};

/// A set of worlds as a bitmask; world `w` is bit `w`.
pub type WorldSet = u64;

/// Maximum number of worlds a model may have.
pub const MAX_WORLDS: usize = 64;

/// Iterates over the worlds in a mask, ascending.
pub fn worlds_in(mask: WorldSet) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w)
        }
    })
}

/// A finite Kripke model with one strict relation per modality index and a
/// valuation for finitely many variables (absent variables denote ∅).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JModel {
    worlds: usize,
    rels: Vec<Vec<WorldSet>>,
    valuation: BTreeMap<String, WorldSet>,
}

impl JModel {
    /// An edgeless model. Panics unless `1 <= worlds <= 64` and
    /// `relations >= 1`.
    pub fn new(worlds: usize, relations: usize) -> Self {
        assert!(
            (1..=MAX_WORLDS).contains(&worlds),
            "world count out of range"
        );
        assert!(relations >= 1, "at least one relation required");
        JModel {
            worlds,
            rels: vec![vec![0; worlds]; relations],
            valuation: BTreeMap::new(),
        }
    }

    pub fn world_count(&self) -> usize {
        self.worlds
    }

    pub fn relation_count(&self) -> usize {
        self.rels.len()
    }

    /// The mask of all worlds.
    pub fn full(&self) -> WorldSet {
        if self.worlds == MAX_WORLDS {
            !0
        } else {
            (1 << self.worlds) - 1
        }
    }

    /// Records `below <_n above`.
    pub fn add_edge(&mut self, n: usize, below: usize, above: usize) {
        assert!(
            below < self.worlds && above < self.worlds,
            "world out of range"
        );
        self.rels[n][above] |= 1 << below;
    }

    /// The worlds strictly below `w` in relation `n`.
    pub fn below(&self, n: usize, w: usize) -> WorldSet {
        self.rels[n][w]
    }

    pub fn is_edge(&self, n: usize, below: usize, above: usize) -> bool {
        self.rels[n][above] & (1 << below) != 0
    }

    /// The pairs `(below, above)` of relation `n`, sorted.
    pub fn edges(&self, n: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for above in 0..self.worlds {
            for below in worlds_in(self.rels[n][above]) {
                pairs.push((below, above));
            }
        }
        pairs.sort_unstable();
        pairs
    }

    pub fn set_valuation(&mut self, var: impl Into<String>, mask: WorldSet) {
        let var = var.into();
        let mask = mask & self.full();
        if mask == 0 {
            self.valuation.remove(&var);
        } else {
            self.valuation.insert(var, mask);
        }
    }

    pub fn set_true(&mut self, var: impl Into<String>, world: usize) {
        assert!(world < self.worlds, "world out of range");
        *self.valuation.entry(var.into()).or_insert(0) |= 1 << world;
    }

    /// The worlds where `var` holds; unmapped variables are false everywhere.
    pub fn var_mask(&self, var: &str) -> WorldSet {
        self.valuation.get(var).copied().unwrap_or(0)
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    /// The worlds satisfying `f`. Box indices must be finite and smaller
    /// than the relation count.
    pub fn eval(&self, f: &Formula) -> Result<WorldSet, IndexError> {
        match f {
            Formula::Bottom => Ok(0),
            Formula::Var(v) => Ok(self.var_mask(v)),
            Formula::Implies(a, b) => Ok((!self.eval(a)? & self.full()) | self.eval(b)?),
            Formula::Box(i, g) => {
                let n = i
                    .as_nat()
                    .ok_or_else(|| IndexError::NotFinite { index: i.clone() })?
                    as usize;
                if n >= self.rels.len() {
                    return Err(IndexError::OutOfRange {
                        index: n as u64,
                        len: self.rels.len(),
                    });
                }
                let inner = self.eval(g)?;
                let mut out = 0;
                for w in 0..self.worlds {
                    // [n]g holds at w iff every world below w satisfies g.
                    if self.rels[n][w] & !inner == 0 {
                        out |= 1 << w;
                    }
                }
                Ok(out)
            }
        }
    }

    /// Whether `f` holds at every world.
    pub fn valid_on(&self, f: &Formula) -> Result<bool, IndexError> {
        Ok(self.eval(f)? == self.full())
    }

    /// The relation `≪_n`: union of the relations with index at least `n`
    /// (empty for `n >= relation_count`), as below-masks per world.
    pub fn ll_below(&self, n: usize) -> Vec<WorldSet> {
        let mut below = vec![0; self.worlds];
        for rel in self.rels.iter().skip(n) {
            for (w, mask) in rel.iter().enumerate() {
                below[w] |= mask;
            }
        }
        below
    }

    /// The relation `⋘_n`: `w ⋘_n v` iff `w ≪_n v`, or some `u` has
    /// `w ≪_n u` and `v ≪_{n+1} u`.
    pub fn lll_below(&self, n: usize) -> Vec<WorldSet> {
        let ll_n = self.ll_below(n);
        let ll_n1 = self.ll_below(n + 1);
        let mut below = ll_n.clone();
        for u in 0..self.worlds {
            for v in worlds_in(ll_n1[u]) {
                below[v] |= ll_n[u];
            }
        }
        below
    }

    /// The partition of the worlds into `≈_n`-classes (reflexive symmetric
    /// transitive closure of `≪_n`).
    pub fn approx_partition(&self, n: usize) -> Partition {
        let mut uf: Vec<usize> = (0..self.worlds).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let root = find(uf, uf[x]);
                uf[x] = root;
            }
            uf[x]
        }
        for (w, mask) in self.ll_below(n).into_iter().enumerate() {
            for u in worlds_in(mask) {
                let (a, b) = (find(&mut uf, w), find(&mut uf, u));
                if a != b {
                    uf[a.max(b)] = a.min(b);
                }
            }
        }
        let mut class_of = vec![usize::MAX; self.worlds];
        let mut masks: Vec<WorldSet> = Vec::new();
        for w in 0..self.worlds {
            let root = find(&mut uf, w);
            if class_of[root] == usize::MAX {
                class_of[root] = masks.len();
                masks.push(0);
            }
            class_of[w] = class_of[root];
            masks[class_of[w]] |= 1 << w;
        }
        Partition { class_of, masks }
    }

    /// Validates the three frame conditions, and stratification when they
    /// hold. Every violation carries witness worlds.
    pub fn validate_j_frame(&self) -> FrameReport {
        let mut violations = Vec::new();
        // Condition 1: each relation is irreflexive and transitive.
        for rel in &self.rels {
            for w in 0..self.worlds {
                if rel[w] & (1 << w) != 0 {
                    violations.push(Violation {
                        condition: FrameCondition::StrictOrder,
                        witness: vec![w],
                    });
                }
                for u in worlds_in(rel[w]) {
                    for v in worlds_in(rel[u] & !rel[w]) {
                        violations.push(Violation {
                            condition: FrameCondition::StrictOrder,
                            witness: vec![v, u, w],
                        });
                    }
                }
            }
        }
        // Condition 2: for n < m and w <_m v, the <_n-predecessors agree.
        for m in 0..self.rels.len() {
            for n in 0..m {
                for v in 0..self.worlds {
                    for w in worlds_in(self.rels[m][v]) {
                        let diff = self.rels[n][w] ^ self.rels[n][v];
                        if let Some(u) = worlds_in(diff).next() {
                            violations.push(Violation {
                                condition: FrameCondition::PredecessorAgreement,
                                witness: vec![w, v, u],
                            });
                        }
                    }
                }
            }
        }
        // Condition 3: for n < m, w <_m v and v <_n u imply w <_n u.
        for m in 0..self.rels.len() {
            for n in 0..m {
                for u in 0..self.worlds {
                    for v in worlds_in(self.rels[n][u]) {
                        for w in worlds_in(self.rels[m][v] & !self.rels[n][u]) {
                            violations.push(Violation {
                                condition: FrameCondition::MixedTransitivity,
                                witness: vec![w, v, u],
                            });
                        }
                    }
                }
            }
        }
        let is_j_frame = violations.is_empty();
        let mut is_stratified = false;
        if is_j_frame {
            match self.stratification_witness() {
                None => is_stratified = true,
                Some((n, w, v)) => violations.push(Violation {
                    condition: FrameCondition::Stratification,
                    witness: vec![n, w, v],
                }),
            }
        }
        FrameReport {
            is_j_frame,
            is_stratified,
            violations,
        }
    }

    /// Fast validity test used by the enumerator; equivalent to
    /// `validate_j_frame().is_j_frame`.
    pub fn is_valid_j_frame(&self) -> bool {
        for rel in &self.rels {
            for w in 0..self.worlds {
                if rel[w] & (1 << w) != 0 {
                    return false;
                }
                for u in worlds_in(rel[w]) {
                    if rel[u] & !rel[w] != 0 {
                        return false;
                    }
                }
            }
        }
        cross_conditions_hold(self.worlds, &self.rels)
    }

    /// The first stratification failure `(n, w, v)`: the `≈_{n+1}`-class of
    /// `w` sits `<_n`-below the class of `v`, yet not `w <_n v`. `None`
    /// means stratified. Assumes a valid frame.
    pub fn stratification_witness(&self) -> Option<(usize, usize, usize)> {
        for n in 0..self.rels.len() {
            let part = self.approx_partition(n + 1);
            for w in 0..self.worlds {
                let class_w = part.mask_of(w);
                for v in 0..self.worlds {
                    if self.is_edge(n, w, v) {
                        continue;
                    }
                    let class_edge =
                        worlds_in(part.mask_of(v)).any(|v2| self.rels[n][v2] & class_w != 0);
                    if class_edge {
                        return Some((n, w, v));
                    }
                }
            }
        }
        None
    }

    pub fn is_stratified(&self) -> bool {
        self.stratification_witness().is_none()
    }

    /// Adds a fresh maximal root: old worlds shift up by one, the new world
    /// 0 sees every old world through relation 0 only, and makes every
    /// variable false.
    pub fn add_root(&self) -> JModel {
        assert!(self.worlds < MAX_WORLDS, "no room for a root");
        let worlds = self.worlds + 1;
        let mut rels = Vec::with_capacity(self.rels.len());
        for (n, rel) in self.rels.iter().enumerate() {
            let mut shifted = vec![0; worlds];
            if n == 0 {
                // Every old world lies <_0-below the new root.
                shifted[0] = ((1 << self.worlds) - 1) << 1;
            }
            for (w, mask) in rel.iter().enumerate() {
                shifted[w + 1] = mask << 1;
            }
            rels.push(shifted);
        }
        let valuation = self
            .valuation
            .iter()
            .map(|(v, mask)| (v.clone(), mask << 1))
            .collect();
        JModel {
            worlds,
            rels,
            valuation,
        }
    }
}

fn cross_conditions_hold(worlds: usize, rels: &[Vec<WorldSet>]) -> bool {
    for m in 0..rels.len() {
        for n in 0..m {
            for v in 0..worlds {
                for w in worlds_in(rels[m][v]) {
                    if rels[n][w] != rels[n][v] {
                        return false;
                    }
                }
            }
            for u in 0..worlds {
                for v in worlds_in(rels[n][u]) {
                    if rels[m][v] & !rels[n][u] != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A partition of the worlds; class ids are dense and ordered by smallest
/// member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    class_of: Vec<usize>,
    masks: Vec<WorldSet>,
}

impl Partition {
    pub fn class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    pub fn same_class(&self, u: usize, w: usize) -> bool {
        self.class_of[u] == self.class_of[w]
    }

    /// The members of `w`'s class.
    pub fn mask_of(&self, w: usize) -> WorldSet {
        self.masks[self.class_of[w]]
    }

    pub fn class_count(&self) -> usize {
        self.masks.len()
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        self.masks.iter().map(|m| worlds_in(*m).collect()).collect()
    }
}

/// Frame conditions checked by [`JModel::validate_j_frame`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FrameCondition {
    /// Condition 1: irreflexive and transitive relations.
    StrictOrder,
    /// Condition 2: higher edges preserve lower predecessor sets.
    PredecessorAgreement,
    /// Condition 3: mixed composition descends.
    MixedTransitivity,
    /// Class-level edges realized pointwise.
    Stratification,
}

impl FrameCondition {
    pub fn id(self) -> &'static str {
        match self {
            FrameCondition::StrictOrder => "condition-1",
            FrameCondition::PredecessorAgreement => "condition-2",
            FrameCondition::MixedTransitivity => "condition-3",
            FrameCondition::Stratification => "stratification",
        }
    }
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub condition: FrameCondition,
    pub witness: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrameReport {
    pub is_j_frame: bool,
    pub is_stratified: bool,
    pub violations: Vec<Violation>,
}

/// All strict partial orders (irreflexive transitive relations) on `worlds`
/// elements, as below-masks per world, in lexicographic order of the mask
/// vector (world 0 most significant).
fn strict_partial_orders(worlds: usize) -> Vec<Vec<WorldSet>> {
    let full: u64 = (1 << worlds) - 1;
    let mut result = Vec::new();
    let mut candidate = vec![0u64; worlds];
    loop {
        let irreflexive = candidate
            .iter()
            .enumerate()
            .all(|(w, mask)| mask & (1 << w) == 0);
        if irreflexive {
            let transitive = (0..worlds)
                .all(|w| worlds_in(candidate[w]).all(|u| candidate[u] & !candidate[w] == 0));
            if transitive {
                result.push(candidate.clone());
            }
        }
        // Advance the odometer; the last world's mask varies fastest.
        let mut digit = worlds;
        loop {
            if digit == 0 {
                return result;
            }
            digit -= 1;
            if candidate[digit] < full {
                candidate[digit] += 1;
                break;
            }
            candidate[digit] = 0;
        }
    }
}

/// The space of candidate frames on a fixed number of worlds: every
/// combination of strict partial orders, one per relation. Combinations are
/// indexed lexicographically (relation 0 most significant); only those
/// passing the cross-relation frame conditions yield a frame.
pub struct FrameSpace {
    worlds: usize,
    n_rels: usize,
    spos: Vec<Vec<WorldSet>>,
}

impl FrameSpace {
    pub fn new(worlds: usize, n_rels: usize) -> Self {
        assert!(n_rels >= 1);
        FrameSpace {
            worlds,
            n_rels,
            spos: strict_partial_orders(worlds),
        }
    }

    /// Number of candidate combinations.
    pub fn len(&self) -> u64 {
        (self.spos.len() as u64).pow(self.n_rels as u32)
    }

    /// Always false: the empty relation is a valid combination.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Decodes combination `idx` and returns it if it is a valid J-frame.
    pub fn frame_at(&self, idx: u64) -> Option<JModel> {
        let base = self.spos.len() as u64;
        let mut rels = Vec::with_capacity(self.n_rels);
        let mut rest = idx;
        for _ in 0..self.n_rels {
            rels.push(self.spos[(rest % base) as usize].clone());
            rest /= base;
        }
        rels.reverse(); // relation 0 is the most significant digit
        if !cross_conditions_hold(self.worlds, &rels) {
            return None;
        }
        Some(JModel {
            worlds: self.worlds,
            rels,
            valuation: BTreeMap::new(),
        })
    }
}

/// All valuations of `vars` over `worlds` worlds, in lexicographic order
/// (first variable most significant, masks ascending).
pub fn enumerate_valuations(
    worlds: usize,
    vars: &[String],
) -> impl Iterator<Item = BTreeMap<String, WorldSet>> {
    let vars: Vec<String> = vars.to_vec();
    let count = 1u64 << worlds;
    let mut masks: Option<Vec<WorldSet>> = Some(vec![0; vars.len()]);
    std::iter::from_fn(move || {
        let current = masks.take()?;
        let map: BTreeMap<String, WorldSet> = vars
            .iter()
            .cloned()
            .zip(current.iter().copied())
            .filter(|(_, m)| *m != 0)
            .collect();
        // Advance; the last variable varies fastest.
        let mut next = current;
        let mut digit = next.len();
        loop {
            if digit == 0 {
                break;
            }
            digit -= 1;
            if next[digit] + 1 < count {
                next[digit] += 1;
                masks = Some(next);
                return Some(map);
            }
            next[digit] = 0;
        }
        // Odometer wrapped: this was the last valuation.
        Some(map)
    })
}

/// Every valid J-frame with `1..=max_worlds` worlds and `n_rels` relations,
/// paired with every valuation of `vars`, in deterministic order (world
/// count, then frame combination, then valuation). With `stratified_only`,
/// non-stratified frames are skipped.
pub fn enumerate_models(
    max_worlds: usize,
    n_rels: usize,
    vars: &[String],
    stratified_only: bool,
) -> impl Iterator<Item = JModel> {
    let vars: Vec<String> = vars.to_vec();
    enumerate_frames(max_worlds, n_rels, stratified_only).flat_map(move |frame| {
        let worlds = frame.world_count();
        enumerate_valuations(worlds, &vars).map(move |valuation| {
            let mut model = frame.clone();
            model.valuation = valuation;
            model
        })
    })
}

/// The frames of [`enumerate_models`], without valuations.
pub fn enumerate_frames(
    max_worlds: usize,
    n_rels: usize,
    stratified_only: bool,
) -> impl Iterator<Item = JModel> {
    (1..=max_worlds).flat_map(move |worlds| {
        let space = FrameSpace::new(worlds, n_rels);
        (0..space.len()).filter_map(move |idx| {
            let frame = space.frame_at(idx)?;
            if stratified_only && !frame.is_stratified() {
                return None;
            }
            Some(frame)
        })
    })
}

/// Error reading the model file format.
#[derive(Debug, Error)]
pub enum ModelFormatError {
    #[error("invalid model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    worlds: usize,
    relations: Vec<Vec<[usize; 2]>>,
    valuation: BTreeMap<String, Vec<usize>>,
}

/// Serializes a model into the documented JSON file format: relation `n`
/// lists its pairs `[below, above]` sorted ascending.
pub fn model_to_json(model: &JModel) -> String {
    let file = ModelFile {
        worlds: model.worlds,
        relations: (0..model.relation_count())
            .map(|n| model.edges(n).into_iter().map(|(u, w)| [u, w]).collect())
            .collect(),
        valuation: model
            .valuation
            .iter()
            .map(|(v, mask)| (v.clone(), worlds_in(*mask).collect()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("model serialization cannot fail")
}

/// Parses the model file format, validating world bounds.
pub fn model_from_json(text: &str) -> Result<JModel, ModelFormatError> {
    let file: ModelFile = serde_json::from_str(text)?;
    if file.worlds < 1 || file.worlds > MAX_WORLDS {
        return Err(ModelFormatError::Invalid(format!(
            "world count must be within 1..={MAX_WORLDS}"
        )));
    }
    if file.relations.is_empty() {
        return Err(ModelFormatError::Invalid(
            "at least one relation required".into(),
        ));
    }
    let mut model = JModel::new(file.worlds, file.relations.len());
    for (n, pairs) in file.relations.iter().enumerate() {
        for [below, above] in pairs {
            if *below >= file.worlds || *above >= file.worlds {
                return Err(ModelFormatError::Invalid(format!(
                    "relation {n} pair [{below}, {above}] out of range"
                )));
            }
            model.add_edge(n, *below, *above);
        }
    }
    for (var, worlds) in &file.valuation {
        for w in worlds {
            if *w >= file.worlds {
                return Err(ModelFormatError::Invalid(format!(
                    "valuation of {var:?} mentions world {w}"
                )));
            }
            model.set_true(var.clone(), *w);
        }
    }
    Ok(model)
}
