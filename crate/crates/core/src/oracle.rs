//! Exact `sat*(n, P)` for tiny `n` by exhaustive search over subfamilies of `2^[n]`.
//!
//! Families are grown by adding sets in canonical order; a branch is cut as soon
//! as the newest set completes an induced copy of `P` (freeness is hereditary).
//! `exact_sat_star` deepens the target size one step at a time, so the first
//! saturated family found has minimum size.

use crate::error::{Error, Result};
use crate::poset::{find_induced_copy_through, Poset};
use crate::sets::{Family, GroundSet, SetWord};

pub const EXACT_MAX_N: u32 = 5;
pub const ENUMERATE_MAX_N: u32 = 4;
pub const DEFAULT_WITNESS_CAP: usize = 1000;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub n: u32,
    pub poset: Poset,
    /// `sat*(n, P)`; `None` when the budget ran out first.
    pub value: Option<usize>,
    /// No saturated family smaller than this exists.
    pub lower_bound: usize,
    pub witnesses: Vec<Family>,
    pub witness_cap: usize,
    pub truncated: bool,
    pub exhausted: bool,
    pub nodes: u64,
}

struct Search<'a> {
    ground: GroundSet,
    p: &'a Poset,
    cube: Vec<SetWord>,
    forced: Vec<SetWord>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(n: u32, p: &'a Poset, budget: u64) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let cube = Family::power_set(ground).members().to_vec();
        // A set comparable to everything can only play an element comparable
        // to everything; if P has none, ∅ and [n] lie in no copy and so are in
        // every saturated family.
        let universal = (0..p.size()).any(|i| (0..p.size()).all(|j| p.comparable(i, j)));
        let forced = if universal { Vec::new() } else { vec![SetWord::EMPTY, ground.full()] };
        Ok(Search { ground, p, cube, forced, budget, nodes: 0 })
    }

    fn family(&self, sets: &[SetWord]) -> Family {
        Family::from_sets(self.ground, sets.iter().copied()).expect("cube members")
    }

    fn is_saturated(&self, sets: &[SetWord]) -> bool {
        let fam = self.family(sets);
        fam.missing_sets()
            .all(|x| matches!(find_induced_copy_through(&fam, self.p, x), Ok(Some(_))))
    }

    /// Whether `x` can join `sets` without creating an induced copy.
    fn can_add(&self, sets: &[SetWord], x: SetWord) -> bool {
        let fam = self.family(sets);
        matches!(find_induced_copy_through(&fam, self.p, x), Ok(None))
    }

    fn root(&self) -> Option<Vec<SetWord>> {
        let mut sets = Vec::new();
        for &f in &self.forced {
            if !self.can_add(&sets, f) {
                return None;
            }
            sets.push(f);
        }
        Some(sets)
    }

    /// DFS over free families; `visit` sees every family reached (with its size)
    /// and returns false to stop. Returns false if stopped or out of budget.
    fn dfs(
        &mut self,
        start: usize,
        sets: &mut Vec<SetWord>,
        max_size: usize,
        visit: &mut dyn FnMut(&Search, &[SetWord]) -> bool,
    ) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if !visit(self, sets) {
            return false;
        }
        if sets.len() == max_size {
            return true;
        }
        for i in start..self.cube.len() {
            let x = self.cube[i];
            if sets.contains(&x) || !self.can_add(sets, x) {
                continue;
            }
            sets.push(x);
            let go_on = self.dfs(i + 1, sets, max_size, visit);
            sets.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

pub fn exact_sat_star(n: u32, p: &Poset, budget: u64) -> Result<ExactResult> {
    exact_sat_star_with_cap(n, p, budget, DEFAULT_WITNESS_CAP)
}

pub fn exact_sat_star_with_cap(n: u32, p: &Poset, budget: u64, witness_cap: usize) -> Result<ExactResult> {
    if n > EXACT_MAX_N {
        return Err(Error::usage(format!("exact search is capped at n <= {EXACT_MAX_N}")));
    }
    let mut search = Search::new(n, p, budget)?;
    let mut result = ExactResult {
        n,
        poset: p.clone(),
        value: None,
        lower_bound: 0,
        witnesses: Vec::new(),
        witness_cap,
        truncated: false,
        exhausted: false,
        nodes: 0,
    };
    let Some(root) = search.root() else {
        // a forced set already creates a copy: nothing is saturated
        return Err(Error::defect("forced extremal sets are not free"));
    };
    let cube = search.cube.len();
    for size in root.len()..=cube {
        result.lower_bound = size;
        let mut found: Vec<Family> = Vec::new();
        let mut truncated = false;
        let mut sets = root.clone();
        let completed = search.dfs(0, &mut sets, size, &mut |s: &Search, sets: &[SetWord]| {
            if sets.len() == size && s.is_saturated(sets) {
                if found.len() < witness_cap {
                    found.push(s.family(sets));
                } else {
                    truncated = true;
                }
            }
            true
        });
        if !completed {
            result.exhausted = true;
            if !found.is_empty() {
                result.value = Some(size);
                result.witnesses = found;
            }
            break;
        }
        if !found.is_empty() {
            found.sort_by(canonical_cmp);
            result.value = Some(size);
            result.witnesses = found;
            result.truncated = truncated;
            break;
        }
    }
    result.nodes = search.nodes;
    Ok(result)
}

/// Every induced `P`-saturated family of size at most `size_cap`, in canonical
/// order (size, then member lists).
pub fn enumerate_saturated(n: u32, p: &Poset, size_cap: usize) -> Result<Vec<Family>> {
    if n > ENUMERATE_MAX_N {
        return Err(Error::usage(format!("enumeration is capped at n <= {ENUMERATE_MAX_N}")));
    }
    let mut search = Search::new(n, p, u64::MAX)?;
    let Some(root) = search.root() else {
        return Ok(Vec::new());
    };
    if root.len() > size_cap {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    let mut sets = root;
    search.dfs(0, &mut sets, size_cap, &mut |s: &Search, sets: &[SetWord]| {
        if s.is_saturated(sets) {
            found.push(s.family(sets));
        }
        true
    });
    found.sort_by(canonical_cmp);
    Ok(found)
}

fn canonical_cmp(a: &Family, b: &Family) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        let ka = a.iter().map(|m| m.canonical_key());
        let kb = b.iter().map(|m| m.canonical_key());
        ka.cmp(kb)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k11_is_one() {
        let p = Poset::complete_bipartite(1, 1).unwrap();
        for n in 1..=4 {
            let r = exact_sat_star(n, &p, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.value, Some(1), "n = {n}");
        }
    }

    #[test]
    fn antichain_is_n_plus_one() {
        let p = Poset::antichain(2).unwrap();
        let r = exact_sat_star(3, &p, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, Some(4));
        // the maximal chains of 2^[3]
        assert_eq!(r.witnesses.len(), 6);
    }

    #[test]
    fn k21_is_n_plus_one() {
        let p = Poset::complete_bipartite(2, 1).unwrap();
        let r = exact_sat_star(3, &p, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.value, Some(4));
    }

    #[test]
    fn enumerate_antichain_n2() {
        let p = Poset::antichain(2).unwrap();
        let fams = enumerate_saturated(2, &p, 3).unwrap();
        assert_eq!(fams.len(), 2);
        assert!(fams.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn enumerate_below_minimum_is_empty() {
        let p = Poset::antichain(2).unwrap();
        assert!(enumerate_saturated(3, &p, 3).unwrap().is_empty());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let p = Poset::complete_bipartite(2, 2).unwrap();
        let r = exact_sat_star(4, &p, 10).unwrap();
        assert!(r.exhausted);
        assert!(r.value.is_none());
    }

    #[test]
    fn caps() {
        let p = Poset::antichain(2).unwrap();
        assert!(exact_sat_star(6, &p, 1).is_err());
        assert!(enumerate_saturated(5, &p, 3).is_err());
    }
}
