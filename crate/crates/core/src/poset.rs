//! Finite abstract posets and induced-subposet search in `(F, ⊆)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{schema_v1, Family, SetWord};

/// Posets are stored as bit-row relation matrices, so at most this many elements.
pub const MAX_POSET: usize = 64;

/// A finite poset on elements `0..size`. `leq[i]` has bit `j` set iff `i ⪯ j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    size: usize,
    leq: Vec<u64>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of the given cover pairs `(lower, upper)`.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if size == 0 || size > MAX_POSET {
            return Err(Error::InvalidPoset(format!("size must be in 1..={MAX_POSET}, got {size}")));
        }
        let mut leq: Vec<u64> = (0..size).map(|i| 1u64 << i).collect();
        for &(lo, hi) in covers {
            if lo >= size || hi >= size {
                return Err(Error::InvalidPoset(format!("cover ({lo},{hi}) out of range")));
            }
            if lo == hi {
                return Err(Error::InvalidPoset(format!("self-cover on element {lo}")));
            }
            leq[lo] |= 1u64 << hi;
        }
        // Warshall over bit rows
        for k in 0..size {
            for i in 0..size {
                if leq[i] >> k & 1 == 1 {
                    leq[i] |= leq[k];
                }
            }
        }
        for i in 0..size {
            for j in (i + 1)..size {
                if leq[i] >> j & 1 == 1 && leq[j] >> i & 1 == 1 {
                    return Err(Error::InvalidPoset(format!(
                        "cycle through elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(Poset { size, leq })
    }

    pub fn chain(k: usize) -> Result<Self> {
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::from_covers(k, &covers)
    }

    pub fn antichain(k: usize) -> Result<Self> {
        Poset::from_covers(k, &[])
    }

    /// `K_{s,t}`: lower layer `0..t`, upper layer `t..t+s`, every lower below every upper.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self> {
        if s < 1 || t < 1 {
            return Err(Error::usage(format!("K_{{s,t}} needs s,t >= 1, got ({s},{t})")));
        }
        let mut covers = Vec::with_capacity(s * t);
        for lo in 0..t {
            for hi in t..t + s {
                covers.push((lo, hi));
            }
        }
        Poset::from_covers(s + t, &covers)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i] >> j & 1 == 1
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Bitmask of elements strictly above `i`.
    pub fn strict_up(&self, i: usize) -> u64 {
        self.leq[i] & !(1u64 << i)
    }

    /// Bitmask of elements strictly below `j`.
    pub fn strict_down(&self, j: usize) -> u64 {
        (0..self.size)
            .filter(|&i| self.lt(i, j))
            .fold(0u64, |acc, i| acc | 1u64 << i)
    }

    pub fn strict_relation_count(&self) -> usize {
        self.leq.iter().map(|r| r.count_ones() as usize - 1).sum()
    }

    /// Checks reflexivity, antisymmetry and transitivity by a full matrix scan.
    pub fn is_valid(&self) -> bool {
        let n = self.size;
        (0..n).all(|i| self.leq(i, i))
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq(i, j) && self.leq(j, i))))
            && (0..n).all(|i| {
                (0..n).all(|j| !self.leq(i, j) || (0..n).all(|k| !self.leq(j, k) || self.leq(i, k)))
            })
    }

    /// Hasse cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if self.lt(i, j) && !(0..self.size).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_antichain(&self, elements: &[usize]) -> bool {
        elements
            .iter()
            .enumerate()
            .all(|(a, &i)| elements[a + 1..].iter().all(|&j| !self.comparable(i, j)))
    }

    /// Length (in elements, minus one) of the longest chain ending at each element.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.size];
        // elements sorted by down-set size form a linear extension
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| self.strict_down(i).count_ones());
        for &j in &order {
            level[j] = (0..self.size)
                .filter(|&i| self.lt(i, j))
                .map(|i| level[i] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Longest chain starting at each element, measured like [`Poset::levels`].
    pub fn depths_above(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.size];
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| self.strict_up(i).count_ones());
        for &i in &order {
            depth[i] = (0..self.size)
                .filter(|&j| self.lt(i, j))
                .map(|j| depth[j] + 1)
                .max()
                .unwrap_or(0);
        }
        depth
    }

    pub fn has_maximum(&self) -> bool {
        (0..self.size).any(|m| (0..self.size).all(|i| self.leq(i, m)))
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            v: 1,
            size: self.size,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset> {
        if json.v != 1 {
            return Err(Error::usage(format!("unsupported poset schema version {}", json.v)));
        }
        let covers: Vec<_> = json.covers.iter().map(|&[a, b]| (a, b)).collect();
        Poset::from_covers(json.size, &covers)
    }

    pub fn from_json_str(s: &str) -> Result<Poset> {
        Poset::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string(&self.to_json()).expect("poset json");
        s.push('\n');
        s
    }

    /// Graphviz rendering of the Hasse diagram, ranked by level.
    pub fn to_dot(&self) -> String {
        let levels = self.levels();
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
        let top = levels.iter().copied().max().unwrap_or(0);
        for l in 0..=top {
            let nodes: Vec<String> = (0..self.size)
                .filter(|&i| levels[i] == l)
                .map(|i| format!("p{i}"))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", nodes.join("; "));
        }
        for i in 0..self.size {
            let _ = writeln!(out, "  p{i} [label=\"{i}\"];");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  p{a} -> p{b} [arrowhead=none];");
        }
        out.push_str("}\n");
        out
    }
}

/// Serialized poset: `{"v": 1, "size": k, "covers": [[lower, upper], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    #[serde(default = "schema_v1")]
    pub v: u32,
    pub size: usize,
    pub covers: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LegsKind {
    NoLegs,
    Legs,
    LegsWithHip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegsProfile {
    pub kind: LegsKind,
    pub legs: Option<(usize, usize)>,
    pub hip: Option<usize>,
}

impl LegsProfile {
    pub fn has_legs(&self) -> bool {
        self.kind >= LegsKind::Legs
    }
}

/// Finds legs `a, b` (incomparable, both strictly below everything else) and,
/// if present, a hip `c` above both legs and strictly below all of `P \ {a,b,c}`.
/// Ties resolve to the smallest labels.
pub fn classify_legs(p: &Poset) -> LegsProfile {
    let n = p.size();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for a in 0..n {
        for b in (a + 1)..n {
            if p.comparable(a, b) {
                continue;
            }
            let rest = all & !(1u64 << a) & !(1u64 << b);
            if p.strict_up(a) & rest != rest || p.strict_up(b) & rest != rest {
                continue;
            }
            let hip = (0..n).filter(|&c| rest >> c & 1 == 1).find(|&c| {
                let above = rest & !(1u64 << c);
                p.strict_up(c) & above == above
            });
            return LegsProfile {
                kind: if hip.is_some() { LegsKind::LegsWithHip } else { LegsKind::Legs },
                legs: Some((a, b)),
                hip,
            };
        }
    }
    LegsProfile { kind: LegsKind::NoLegs, legs: None, hip: None }
}

/// An injective map from poset elements to family member indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn image(&self, fam: &Family) -> Vec<SetWord> {
        self.map.iter().map(|&i| fam.members()[i]).collect()
    }

    /// True iff the map is injective and `x ⪯ y ⇔ f(x) ⊆ f(y)` for all pairs.
    pub fn is_induced(&self, fam: &Family, p: &Poset) -> bool {
        if self.map.len() != p.size() || self.map.iter().any(|&i| i >= fam.len()) {
            return false;
        }
        let img = self.image(fam);
        for x in 0..p.size() {
            for y in 0..p.size() {
                if x != y && (self.map[x] == self.map[y] || p.leq(x, y) != img[x].is_subset(img[y])) {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking induced-subposet search.
///
/// Poset elements are placed in order of (level, descending degree). Candidate
/// members are filtered by the cardinality window implied by the element's
/// longest chains below and above, and by the sizes of already placed
/// comparable neighbours.
pub struct Embedder<'a> {
    fam: &'a Family,
    p: &'a Poset,
    order: Vec<usize>,
    min_card: Vec<u32>,
    max_card: Vec<u32>,
    pins: Vec<(usize, usize)>,
}

impl<'a> Embedder<'a> {
    pub fn new(fam: &'a Family, p: &'a Poset) -> Self {
        let levels = p.levels();
        let above = p.depths_above();
        let degree: Vec<usize> = (0..p.size())
            .map(|i| (0..p.size()).filter(|&j| j != i && p.comparable(i, j)).count())
            .collect();
        let mut order: Vec<usize> = (0..p.size()).collect();
        order.sort_by_key(|&i| (levels[i], std::cmp::Reverse(degree[i]), i));
        let n = fam.n();
        Embedder {
            fam,
            p,
            order,
            min_card: levels.iter().map(|&l| l as u32).collect(),
            max_card: above.iter().map(|&d| n.saturating_sub(d as u32)).collect(),
            pins: Vec::new(),
        }
    }

    /// Forces `element ↦ member_index` in every embedding found.
    pub fn pin(mut self, element: usize, member_index: usize) -> Self {
        self.pins.push((element, member_index));
        self
    }

    pub fn find(&self) -> Option<Embedding> {
        let mut found = None;
        self.search(&mut |e| {
            found = Some(e.clone());
            false
        });
        found
    }

    pub fn exists(&self) -> bool {
        self.find().is_some()
    }

    /// Calls `visit` on every induced embedding until it returns `false`.
    pub fn for_each(&self, mut visit: impl FnMut(&Embedding) -> bool) {
        self.search(&mut visit);
    }

    fn search(&self, visit: &mut dyn FnMut(&Embedding) -> bool) {
        let size = self.p.size();
        if self.fam.len() < size {
            return;
        }
        let mut map = vec![usize::MAX; size];
        let mut used = vec![false; self.fam.len()];
        for &(e, m) in &self.pins {
            if e >= size || m >= self.fam.len() {
                return;
            }
            if map[e] != usize::MAX && map[e] != m {
                return;
            }
            if map[e] == usize::MAX && used[m] {
                return;
            }
            if !self.consistent(&map, e, m) {
                return;
            }
            map[e] = m;
            used[m] = true;
        }
        let free: Vec<usize> = self.order.iter().copied().filter(|&e| map[e] == usize::MAX).collect();
        self.extend(&free, 0, &mut map, &mut used, visit);
    }

    fn extend(
        &self,
        free: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&Embedding) -> bool,
    ) -> bool {
        if depth == free.len() {
            return visit(&Embedding { map: map.clone() });
        }
        let e = free[depth];
        let members = self.fam.members();
        let (mut lo, mut hi) = (self.min_card[e], self.max_card[e]);
        for (u, &mu) in map.iter().enumerate() {
            if mu == usize::MAX {
                continue;
            }
            let card = members[mu].len();
            if self.p.lt(e, u) {
                hi = hi.min(card.saturating_sub(1));
            } else if self.p.lt(u, e) {
                lo = lo.max(card + 1);
            }
        }
        if lo > hi {
            return true;
        }
        let start = members.partition_point(|m| m.len() < lo);
        for m in start..members.len() {
            if members[m].len() > hi {
                break;
            }
            if used[m] || !self.consistent(map, e, m) {
                continue;
            }
            map[e] = m;
            used[m] = true;
            let keep_going = self.extend(free, depth + 1, map, used, visit);
            map[e] = usize::MAX;
            used[m] = false;
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn consistent(&self, map: &[usize], e: usize, m: usize) -> bool {
        let members = self.fam.members();
        let cand = members[m];
        map.iter().enumerate().all(|(u, &mu)| {
            if mu == usize::MAX || u == e {
                return true;
            }
            let other = members[mu];
            mu != m
                && self.p.leq(e, u) == cand.is_subset(other)
                && self.p.leq(u, e) == other.is_subset(cand)
        })
    }
}

/// Returns an induced copy of `p` inside `(fam, ⊆)`, if any.
pub fn find_induced_copy(fam: &Family, p: &Poset) -> Option<Embedding> {
    Embedder::new(fam, p).find()
}

/// Returns an induced copy of `p` in `fam ∪ {extra}` that uses `extra`.
///
/// The returned embedding indexes into `fam.insert(extra)`.
pub fn find_induced_copy_through(fam: &Family, p: &Poset, extra: SetWord) -> Result<Option<Embedding>> {
    let augmented = fam.insert(extra)?;
    let idx = augmented.index_of(extra).expect("just inserted");
    for e in 0..p.size() {
        if let Some(emb) = Embedder::new(&augmented, p).pin(e, idx).find() {
            return Ok(Some(emb));
        }
    }
    Ok(None)
}

/// Induced `P`-saturation by definition: `fam` is induced `P`-free and every
/// absent set completes a copy.
pub fn is_induced_saturated(fam: &Family, p: &Poset) -> bool {
    if find_induced_copy(fam, p).is_some() {
        return false;
    }
    fam.missing_sets()
        .all(|x| matches!(find_induced_copy_through(fam, p, x), Ok(Some(_))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::GroundSet;

    fn s(xs: &[u32]) -> SetWord {
        SetWord::from_elements(xs.iter().copied()).unwrap()
    }

    fn fam(n: u32, sets: &[&[u32]]) -> Family {
        Family::from_sets(GroundSet::new(n).unwrap(), sets.iter().map(|x| s(x))).unwrap()
    }

    #[test]
    fn from_covers_examples() {
        let chain = Poset::from_covers(2, &[(0, 1)]).unwrap();
        assert!(chain.leq(0, 1) && !chain.leq(1, 0));
        let anti = Poset::from_covers(2, &[]).unwrap();
        assert!(!anti.comparable(0, 1));
        assert!(matches!(Poset::from_covers(2, &[(0, 1), (1, 0)]), Err(Error::InvalidPoset(_))));
        assert!(Poset::from_covers(2, &[(0, 2)]).is_err());
        assert!(Poset::from_covers(0, &[]).is_err());
    }

    #[test]
    fn closure_is_transitive() {
        let p = Poset::from_covers(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p.leq(0, 3));
        assert!(p.is_valid());
        assert_eq!(p.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(p.levels(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn complete_bipartite_shapes() {
        let k22 = Poset::complete_bipartite(2, 2).unwrap();
        assert_eq!(k22.size(), 4);
        assert_eq!(k22.covers().len(), 4);
        let k11 = Poset::complete_bipartite(1, 1).unwrap();
        assert_eq!(k11, Poset::chain(2).unwrap());
        let k31 = Poset::complete_bipartite(3, 1).unwrap();
        assert_eq!(k31.covers().len(), 3);
        assert!((1..4).all(|u| k31.lt(0, u)));
        assert!(Poset::complete_bipartite(0, 2).is_err());
        for (s, t) in [(1, 1), (2, 1), (3, 2), (4, 3)] {
            let k = Poset::complete_bipartite(s, t).unwrap();
            assert_eq!(k.strict_relation_count(), s * t);
            assert!(k.is_antichain(&(0..t).collect::<Vec<_>>()));
            assert!(k.is_antichain(&(t..t + s).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn classify_legs_examples() {
        let k22 = classify_legs(&Poset::complete_bipartite(2, 2).unwrap());
        assert_eq!(k22.kind, LegsKind::Legs);
        assert_eq!(k22.legs, Some((0, 1)));
        assert_eq!(classify_legs(&Poset::chain(3).unwrap()).kind, LegsKind::NoLegs);
        // a, b < c < d
        let p = Poset::from_covers(4, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let prof = classify_legs(&p);
        assert_eq!(prof.kind, LegsKind::LegsWithHip);
        assert_eq!(prof.hip, Some(2));
        assert_eq!(classify_legs(&Poset::antichain(2).unwrap()).kind, LegsKind::Legs);
        assert_eq!(classify_legs(&Poset::complete_bipartite(2, 1).unwrap()).kind, LegsKind::NoLegs);
        assert_eq!(classify_legs(&Poset::complete_bipartite(1, 2).unwrap()).kind, LegsKind::LegsWithHip);
    }

    #[test]
    fn induced_copy_examples() {
        let f = fam(2, &[&[], &[1], &[1, 2]]);
        let e = find_induced_copy(&f, &Poset::chain(3).unwrap()).unwrap();
        assert!(e.is_induced(&f, &Poset::chain(3).unwrap()));

        let f = fam(2, &[&[1], &[2]]);
        assert!(find_induced_copy(&f, &Poset::chain(2).unwrap()).is_none());

        let f = fam(3, &[&[1], &[2], &[1, 3], &[2, 3]]);
        assert!(find_induced_copy(&f, &Poset::complete_bipartite(2, 2).unwrap()).is_none());
    }

    #[test]
    fn induced_means_no_extra_comparabilities() {
        // {1} ⊂ {1,2} ⊂ {1,2,3}: contains a 3-chain, but no induced 2-antichain + element above.
        let f = fam(3, &[&[1], &[1, 2], &[1, 2, 3]]);
        let v = Poset::complete_bipartite(1, 2).unwrap();
        assert!(find_induced_copy(&f, &v).is_none());
    }

    #[test]
    fn pinned_search() {
        let f = fam(3, &[&[1], &[2], &[1, 2]]);
        let p = Poset::complete_bipartite(1, 2).unwrap();
        let top = f.index_of(s(&[1, 2])).unwrap();
        assert!(Embedder::new(&f, &p).pin(2, top).exists());
        assert!(!Embedder::new(&f, &p).pin(0, top).exists());
        let through = find_induced_copy_through(&fam(3, &[&[1], &[2]]), &p, s(&[1, 2, 3])).unwrap();
        assert!(through.is_some());
    }

    #[test]
    fn json_and_dot() {
        let p = Poset::complete_bipartite(2, 2).unwrap();
        let q = Poset::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(p, q);
        let dot = p.to_dot();
        assert_eq!(dot.matches("->").count(), 4);
        assert!(Poset::from_json_str(r#"{"size": 2, "covers": [[0,1],[1,0]]}"#).is_err());
    }
}
