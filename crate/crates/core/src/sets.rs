//! Subsets of `[n]` packed into a single machine word, and canonically ordered
//! families of them.
//!
//! Element `i` of the ground set (1-indexed, as in `[n] = {1, ..., n}`) lives in
//! bit `i - 1`. Ordering two [`SetWord`]s numerically is exactly the colex order:
//! `A < B` iff the largest element of `A △ B` belongs to `B`.

use std::fmt;
use std::ops::{BitAnd, BitOr};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u32,
}

impl GroundSet {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::usage(format!(
                "ground set size must be in 1..={MAX_GROUND}, got {n}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// `[n]` itself.
    pub fn full(self) -> SetWord {
        SetWord::prefix(self.n)
    }

    pub fn contains(self, a: SetWord) -> bool {
        a.0 & !self.full().0 == 0
    }

    pub fn check(self, a: SetWord) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::usage(format!("set {a} is not a subset of [{}]", self.n)))
        }
    }

    pub fn complement(self, a: SetWord) -> SetWord {
        SetWord(!a.0 & self.full().0)
    }

    /// Containment relation between two sets, both of which must live in this
    /// ground set.
    pub fn relation(self, a: SetWord, b: SetWord) -> Result<Relation> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.relation(b))
    }

    /// Number of subsets, `2^n`.
    pub fn cube_size(self) -> u128 {
        1u128 << self.n
    }
}

/// The four possible containment relations between two sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equal,
    StrictSubset,
    StrictSuperset,
    Incomparable,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetWord(u64);

impl SetWord {
    pub const EMPTY: SetWord = SetWord(0);

    pub const fn from_bits(bits: u64) -> Self {
        SetWord(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{x}` for `x` in `1..=64`.
    pub fn singleton(x: u32) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&x));
        SetWord(1u64 << (x - 1))
    }

    /// `[m] = {1, ..., m}`.
    pub fn prefix(m: u32) -> Self {
        match m {
            0 => SetWord(0),
            m if m >= 64 => SetWord(u64::MAX),
            m => SetWord((1u64 << m) - 1),
        }
    }

    /// The integer interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        let lo = lo.max(1);
        if lo > hi {
            return SetWord::EMPTY;
        }
        SetWord(Self::prefix(hi).0 & !Self::prefix(lo - 1).0)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for x in elements {
            if x == 0 || x > MAX_GROUND {
                return Err(Error::usage(format!("element {x} out of range 1..={MAX_GROUND}")));
            }
            bits |= 1u64 << (x - 1);
        }
        Ok(SetWord(bits))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: u32) -> bool {
        (1..=MAX_GROUND).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }

    pub fn is_subset(self, other: SetWord) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: SetWord) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_comparable(self, other: SetWord) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    pub fn relation(self, other: SetWord) -> Relation {
        match (self.is_subset(other), other.is_subset(self)) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::StrictSubset,
            (false, true) => Relation::StrictSuperset,
            (false, false) => Relation::Incomparable,
        }
    }

    pub fn union(self, other: SetWord) -> SetWord {
        SetWord(self.0 | other.0)
    }

    pub fn intersection(self, other: SetWord) -> SetWord {
        SetWord(self.0 & other.0)
    }

    pub fn difference(self, other: SetWord) -> SetWord {
        SetWord(self.0 & !other.0)
    }

    pub fn with(self, x: u32) -> SetWord {
        self.union(SetWord::singleton(x))
    }

    pub fn without(self, x: u32) -> SetWord {
        self.difference(SetWord::singleton(x))
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in ascending order (1-indexed).
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn elements(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Sort key of the canonical family order: cardinality, then colex.
    pub fn canonical_key(self) -> (u32, u64) {
        (self.len(), self.0)
    }
}

impl BitOr for SetWord {
    type Output = SetWord;
    fn bitor(self, rhs: SetWord) -> SetWord {
        self.union(rhs)
    }
}

impl BitAnd for SetWord {
    type Output = SetWord;
    fn bitand(self, rhs: SetWord) -> SetWord {
        self.intersection(rhs)
    }
}

impl fmt::Display for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(x + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// A deduplicated family of subsets of a fixed ground set, kept in canonical
/// order (cardinality, then colex).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    ground: GroundSet,
    members: Vec<SetWord>,
}

impl Family {
    pub fn empty(ground: GroundSet) -> Self {
        Family { ground, members: Vec::new() }
    }

    pub fn from_sets<I: IntoIterator<Item = SetWord>>(ground: GroundSet, sets: I) -> Result<Self> {
        let mut members: Vec<SetWord> = sets.into_iter().collect();
        for &a in &members {
            ground.check(a)?;
        }
        normalize(&mut members);
        Ok(Family { ground, members })
    }

    /// All `2^n` subsets of the ground set. Only sensible for small `n`.
    pub fn power_set(ground: GroundSet) -> Self {
        assert!(ground.n() <= 24, "power set of [{}] is too large", ground.n());
        let members = (0..1u64 << ground.n()).map(SetWord);
        Family::from_sets(ground, members).expect("subsets of the ground set")
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> u32 {
        self.ground.n()
    }

    pub fn members(&self) -> &[SetWord] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SetWord> {
        self.members.iter()
    }

    pub fn index_of(&self, a: SetWord) -> Option<usize> {
        self.members
            .binary_search_by_key(&a.canonical_key(), |m| m.canonical_key())
            .ok()
    }

    pub fn contains(&self, a: SetWord) -> bool {
        self.index_of(a).is_some()
    }

    /// Returns a new family with `a` present exactly once.
    pub fn insert(&self, a: SetWord) -> Result<Family> {
        self.ground.check(a)?;
        let mut members = self.members.clone();
        if let Err(pos) = members.binary_search_by_key(&a.canonical_key(), |m| m.canonical_key()) {
            members.insert(pos, a);
        }
        Ok(Family { ground: self.ground, members })
    }

    pub fn remove(&self, a: SetWord) -> Family {
        let members = self.members.iter().copied().filter(|&m| m != a).collect();
        Family { ground: self.ground, members }
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        if self.ground != other.ground {
            return Err(Error::usage(format!(
                "cannot merge families over [{}] and [{}]",
                self.n(),
                other.n()
            )));
        }
        Family::from_sets(self.ground, self.members.iter().chain(other.members.iter()).copied())
    }

    pub fn intersection(&self, other: &Family) -> Family {
        let members = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Family { ground: self.ground, members }
    }

    /// `{A^c : A in self}`.
    pub fn complemented(&self) -> Family {
        let g = self.ground;
        Family::from_sets(g, self.members.iter().map(|&a| g.complement(a)))
            .expect("complements stay inside the ground set")
    }

    /// Every subset of the ground set not in the family, in colex order.
    pub fn missing_sets(&self) -> MissingSets {
        let mut present: Vec<u64> = self.members.iter().map(|m| m.bits()).collect();
        present.sort_unstable();
        MissingSets {
            next: 0,
            end: self.ground.cube_size(),
            present,
            cursor: 0,
        }
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            v: 1,
            n: self.n(),
            sets: self.members.iter().map(|m| m.elements()).collect(),
        }
    }

    pub fn from_json(json: &FamilyJson) -> Result<Family> {
        if json.v != 1 {
            return Err(Error::usage(format!("unsupported family schema version {}", json.v)));
        }
        let ground = GroundSet::new(json.n)?;
        let mut sets = Vec::with_capacity(json.sets.len());
        for elements in &json.sets {
            if let Some(&x) = elements.iter().find(|&&x| x == 0 || x > ground.n()) {
                return Err(Error::usage(format!("element {x} outside [{}]", ground.n())));
            }
            sets.push(SetWord::from_elements(elements.iter().copied())?);
        }
        Family::from_sets(ground, sets)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json()).expect("family json");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Family> {
        Family::from_json(&serde_json::from_str(s)?)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family[n={}]", self.n())?;
        f.debug_list().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a SetWord;
    type IntoIter = std::slice::Iter<'a, SetWord>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn normalize(members: &mut Vec<SetWord>) {
    members.sort_unstable_by_key(|m| m.canonical_key());
    members.dedup();
}

/// Serialized family: `{"v": 1, "n": <int>, "sets": [[<ints ascending>], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    #[serde(default = "schema_v1")]
    pub v: u32,
    pub n: u32,
    pub sets: Vec<Vec<u32>>,
}

pub(crate) fn schema_v1() -> u32 {
    1
}

pub struct MissingSets {
    next: u128,
    end: u128,
    present: Vec<u64>,
    cursor: usize,
}

impl Iterator for MissingSets {
    type Item = SetWord;

    fn next(&mut self) -> Option<SetWord> {
        while self.next < self.end {
            let candidate = self.next as u64;
            self.next += 1;
            if self.present.get(self.cursor) == Some(&candidate) {
                self.cursor += 1;
                continue;
            }
            return Some(SetWord(candidate));
        }
        None
    }
}

/// All `k`-subsets of `pool`, cardinality fixed, in colex order.
pub fn k_subsets(pool: SetWord, k: u32) -> Vec<SetWord> {
    let elems = pool.elements();
    if k as usize > elems.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k as usize).collect();
    loop {
        out.push(SetWord(idx.iter().fold(0u64, |acc, &i| acc | 1u64 << (elems[i] - 1))));
        // next combination in colex order: bump the lowest index that can move
        let mut j = 0;
        while j < idx.len() {
            let limit = if j + 1 < idx.len() { idx[j + 1] } else { elems.len() };
            if idx[j] + 1 < limit {
                idx[j] += 1;
                for (r, slot) in idx.iter_mut().enumerate().take(j) {
                    *slot = r;
                }
                break;
            }
            j += 1;
        }
        if j == idx.len() {
            break;
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
