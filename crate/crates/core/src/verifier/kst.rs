//! Induced `K_{s,t}` detection specialised to the bipartite shape.
//!
//! The search picks the lower layer first (pairwise incomparable sets, in
//! canonical order) while shrinking the pool of sets strictly above every
//! chosen lower; the upper layer is then any `s`-antichain in that pool.

use serde::{Deserialize, Serialize};

use crate::sets::{Family, SetWord};

/// An induced copy of `K_{s,t}`: `uppers` and `lowers` are antichains and every
/// lower is a strict subset of every upper.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InducedKstCopy {
    pub uppers: Vec<SetWord>,
    pub lowers: Vec<SetWord>,
}

impl InducedKstCopy {
    pub fn validate(&self, s: usize, t: usize) -> Result<(), String> {
        if self.uppers.len() != s || self.lowers.len() != t {
            return Err(format!(
                "layer sizes ({}, {}) differ from ({s}, {t})",
                self.uppers.len(),
                self.lowers.len()
            ));
        }
        for layer in [&self.uppers, &self.lowers] {
            for (i, a) in layer.iter().enumerate() {
                for b in &layer[i + 1..] {
                    if a.is_comparable(*b) {
                        return Err(format!("{a} and {b} in one layer are comparable"));
                    }
                }
            }
        }
        for lo in &self.lowers {
            for up in &self.uppers {
                if !lo.is_strict_subset(*up) {
                    return Err(format!("lower {lo} is not strictly below upper {up}"));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: SetWord) -> bool {
        self.uppers.contains(&x) || self.lowers.contains(&x)
    }

    pub fn sets(&self) -> impl Iterator<Item = SetWord> + '_ {
        self.lowers.iter().chain(self.uppers.iter()).copied()
    }

    pub fn to_json(&self) -> CopyJson {
        CopyJson {
            uppers: self.uppers.iter().map(|x| x.elements()).collect(),
            lowers: self.lowers.iter().map(|x| x.elements()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyJson {
    pub uppers: Vec<Vec<u32>>,
    pub lowers: Vec<Vec<u32>>,
}

/// Returns an induced copy of `K_{s,t}` in `(fam, ⊆)`, if any.
pub fn find_induced_kst(fam: &Family, s: usize, t: usize) -> Option<InducedKstCopy> {
    find_in_slice(fam.members(), s, t)
}

pub(crate) fn find_in_slice(members: &[SetWord], s: usize, t: usize) -> Option<InducedKstCopy> {
    if s == 0 || t == 0 || members.len() < s + t {
        return None;
    }
    let mut lowers = Vec::with_capacity(t);
    lower_layer(members, 0, &mut lowers, members.to_vec(), None, s, t)
}

/// Returns an induced copy of `K_{s,t}` in `fam ∪ {extra}` that uses `extra`.
/// If `extra` is already a member, this asks for a copy through that member.
pub fn find_induced_kst_through(
    fam: &Family,
    s: usize,
    t: usize,
    extra: SetWord,
) -> Option<InducedKstCopy> {
    if s == 0 || t == 0 {
        return None;
    }
    let others: Vec<SetWord> = fam.iter().copied().filter(|&m| m != extra).collect();
    if others.len() + 1 < s + t {
        return None;
    }

    // extra in the lower layer
    let lower_pool: Vec<SetWord> = others.iter().copied().filter(|m| !m.is_comparable(extra)).collect();
    let up_pool: Vec<SetWord> = others.iter().copied().filter(|&m| extra.is_strict_subset(m)).collect();
    if up_pool.len() >= s {
        let mut lowers = vec![extra];
        if let Some(copy) = lower_layer(&lower_pool, 0, &mut lowers, up_pool, None, s, t) {
            return Some(copy);
        }
    }

    // extra in the upper layer
    let below: Vec<SetWord> = others.iter().copied().filter(|&m| m.is_strict_subset(extra)).collect();
    if below.len() >= t {
        let up_pool: Vec<SetWord> = others.iter().copied().filter(|m| !m.is_comparable(extra)).collect();
        let mut lowers = Vec::with_capacity(t);
        if let Some(copy) = lower_layer(&below, 0, &mut lowers, up_pool, Some(extra), s, t) {
            return Some(copy);
        }
    }
    None
}

/// Extends `lowers` with members of `cands[start..]`; `pool` holds the sets
/// strictly above every chosen lower. With `fixed_upper`, that set is a
/// mandatory upper and only `s - 1` more are drawn from `pool`.
fn lower_layer(
    cands: &[SetWord],
    start: usize,
    lowers: &mut Vec<SetWord>,
    pool: Vec<SetWord>,
    fixed_upper: Option<SetWord>,
    s: usize,
    t: usize,
) -> Option<InducedKstCopy> {
    let need_up = if fixed_upper.is_some() { s - 1 } else { s };
    if lowers.len() == t {
        let mut uppers = Vec::with_capacity(s);
        if let Some(u) = fixed_upper {
            uppers.push(u);
        }
        if antichain(&pool, need_up, &mut uppers, 0) {
            return Some(InducedKstCopy { uppers, lowers: lowers.clone() });
        }
        return None;
    }
    let remaining = t - lowers.len();
    for i in start..cands.len() {
        if cands.len() - i < remaining {
            break;
        }
        let m = cands[i];
        if lowers.iter().any(|l| l.is_comparable(m)) {
            continue;
        }
        let next: Vec<SetWord> = pool.iter().copied().filter(|&u| m.is_strict_subset(u)).collect();
        if next.len() < need_up {
            continue;
        }
        lowers.push(m);
        let found = lower_layer(cands, i + 1, lowers, next, fixed_upper, s, t);
        lowers.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Pushes `k` pairwise incomparable members of `pool[start..]` onto `chosen`
/// (which may already hold sets they must also be incomparable with).
fn antichain(pool: &[SetWord], k: usize, chosen: &mut Vec<SetWord>, start: usize) -> bool {
    if k == 0 {
        return true;
    }
    for i in start..pool.len() {
        if pool.len() - i < k {
            return false;
        }
        let m = pool[i];
        if chosen.iter().any(|c| c.is_comparable(m)) {
            continue;
        }
        chosen.push(m);
        if antichain(pool, k - 1, chosen, i + 1) {
            return true;
        }
        chosen.pop();
    }
    false
}
