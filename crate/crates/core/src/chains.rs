//! Bundles of internally disjoint complete chains between two sets, and the
//! upper/lower lanterns assembled from them.

use crate::error::{Error, Result};
use crate::sets::SetWord;

/// A chain `A = C_0 ⊂ C_1 ⊂ ... ⊂ C_k = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub sets: Vec<SetWord>,
}

impl Chain {
    pub fn bottom(&self) -> SetWord {
        self.sets[0]
    }

    pub fn top(&self) -> SetWord {
        *self.sets.last().expect("chains are nonempty")
    }

    /// Complete: one set of every cardinality from `|A|` to `|B|`.
    pub fn is_complete(&self) -> bool {
        !self.sets.is_empty()
            && self.sets.len() as u32 == self.top().difference(self.bottom()).len() + 1
            && self.sets.windows(2).all(|w| w[0].is_strict_subset(w[1]) && w[1].len() == w[0].len() + 1)
    }

    /// Sets strictly between the endpoints.
    pub fn internal(&self) -> &[SetWord] {
        if self.sets.len() <= 2 {
            &[]
        } else {
            &self.sets[1..self.sets.len() - 1]
        }
    }

    /// The member of cardinality `card`, if the chain reaches it.
    pub fn at_size(&self, card: u32) -> Option<SetWord> {
        let base = self.bottom().len();
        card.checked_sub(base).and_then(|i| self.sets.get(i as usize)).copied()
    }
}

/// The `k = |B \ A|` chains `C_1..C_k`, where `C_i` adds `x_i, x_{i+1}, ..., x_{i-1}`
/// (indices cyclic) for `order = (x_1, ..., x_k)`. Any two of them meet only in `{A, B}`.
///
/// When `A = B` the result is the single one-set chain `(A)`.
pub fn disjoint_chains(a: SetWord, b: SetWord, order: &[u32]) -> Result<Vec<Chain>> {
    if !a.is_subset(b) {
        return Err(Error::usage(format!("{a} is not a subset of {b}")));
    }
    let diff = b.difference(a);
    let as_set = SetWord::from_elements(order.iter().copied())?;
    if order.len() as u32 != diff.len() || as_set != diff {
        return Err(Error::usage(format!("order {order:?} is not a permutation of {diff}")));
    }
    let k = order.len();
    if k == 0 {
        return Ok(vec![Chain { sets: vec![a] }]);
    }
    Ok((0..k)
        .map(|i| {
            let mut cur = a;
            let mut sets = Vec::with_capacity(k + 1);
            sets.push(cur);
            for step in 0..k {
                cur = cur.with(order[(i + step) % k]);
                sets.push(cur);
            }
            Chain { sets }
        })
        .collect())
}

/// First and last increment sets of a bundle of complete chains from a common
/// `A` to a common `B`: `⋃ X_i \ A` over the level-`|A|+1` members, and
/// `B \ ⋂ Y_i` over the level-`|B|-1` members.
pub fn increment_sets(chains: &[Chain]) -> Result<(SetWord, SetWord)> {
    let first_chain = chains.first().ok_or_else(|| Error::usage("no chains given"))?;
    let (a, b) = (first_chain.bottom(), first_chain.top());
    let k = b.difference(a).len();
    if k == 0 {
        return Err(Error::usage("degenerate chain has no increment sets"));
    }
    if chains.len() as u32 > k {
        return Err(Error::usage(format!("{} chains but |B \\ A| = {k}", chains.len())));
    }
    let mut lows = SetWord::EMPTY;
    let mut highs = b;
    for c in chains {
        if !c.is_complete() || c.bottom() != a || c.top() != b {
            return Err(Error::usage("chains must be complete with common endpoints"));
        }
        lows = lows.union(c.sets[1]);
        highs = highs.intersection(c.sets[c.sets.len() - 2]);
    }
    let first = lows.difference(a);
    let last = b.difference(highs);
    if first.len() as usize != chains.len() || last.len() as usize != chains.len() {
        return Err(Error::usage("chains are not internally disjoint"));
    }
    Ok((first, last))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LanternKind {
    Upper,
    Lower,
}

/// A union of internally disjoint complete chains from `base` to
/// `top = base ∪ [s+t+1, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lantern {
    pub base: SetWord,
    pub top: SetWord,
    pub chains: Vec<Chain>,
    pub kind: LanternKind,
    pub first_increment: SetWord,
    pub last_increment: SetWord,
}

/// Lantern parameters `(s, t, n)` with `s >= t >= 2` and `n >= 2s + t - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LanternParams {
    pub s: u32,
    pub t: u32,
    pub n: u32,
}

impl LanternParams {
    pub fn new(s: u32, t: u32, n: u32) -> Result<Self> {
        if t < 2 || s < t {
            return Err(Error::usage(format!("lanterns need s >= t >= 2, got s={s}, t={t}")));
        }
        if n > crate::sets::MAX_GROUND {
            return Err(Error::usage(format!("n = {n} exceeds word capacity")));
        }
        if n < 2 * s + t - 1 {
            return Err(Error::Infeasible(format!(
                "n = {n} < 2s + t - 1 = {}",
                2 * s + t - 1
            )));
        }
        Ok(LanternParams { s, t, n })
    }

    /// `[s+t+1, n]` in natural order: `x_j = s + t + j`.
    pub fn tail(&self) -> Vec<u32> {
        (self.s + self.t + 1..=self.n).collect()
    }

    fn check_base(&self, a: SetWord) -> Result<()> {
        if !a.is_subset(SetWord::prefix(self.s + self.t)) {
            return Err(Error::usage(format!("lantern base {a} not inside [s+t]")));
        }
        Ok(())
    }
}

impl Lantern {
    /// Builds a lantern from chain indices (0-based, into the cyclic bundle
    /// over `order`). The increment sets are read off the chosen chains.
    pub fn from_order(
        base: SetWord,
        params: LanternParams,
        kind: LanternKind,
        order: &[u32],
        picks: &[usize],
    ) -> Result<Lantern> {
        params.check_base(base)?;
        let top = base.union(SetWord::interval(params.s + params.t + 1, params.n));
        let bundle = disjoint_chains(base, top, order)?;
        let chains: Vec<Chain> = picks
            .iter()
            .map(|&i| bundle.get(i).cloned().ok_or_else(|| Error::usage(format!("no chain {i}"))))
            .collect::<Result<_>>()?;
        let (first_increment, last_increment) = increment_sets(&chains)?;
        Ok(Lantern { base, top, chains, kind, first_increment, last_increment })
    }

    /// Upper `s`-lantern over `A`: chains `C_2..C_s` of the natural-order bundle,
    /// so the last increment set is `[s+t+1, 2s+t-1]`.
    pub fn upper(base: SetWord, params: LanternParams) -> Result<Lantern> {
        let k = (params.n - params.s - params.t) as usize;
        // C_i is index i-1; indices are taken mod k, which matters only when k = s-1
        let picks: Vec<usize> = (2..=params.s as usize).map(|i| (i - 1) % k).collect();
        Lantern::from_order(base, params, LanternKind::Upper, &params.tail(), &picks)
    }

    /// Lower `t`-lantern over `A`: chains `C_1..C_{t-1}`, so the first increment
    /// set is `[s+t+1, s+2t-1]`.
    pub fn lower(base: SetWord, params: LanternParams) -> Result<Lantern> {
        let picks: Vec<usize> = (0..params.t as usize - 1).collect();
        Lantern::from_order(base, params, LanternKind::Lower, &params.tail(), &picks)
    }

    /// All members, endpoints once.
    pub fn members(&self) -> Vec<SetWord> {
        let mut out = vec![self.base];
        for c in &self.chains {
            out.extend_from_slice(c.internal());
        }
        if self.top != self.base {
            out.push(self.top);
        }
        out
    }

    /// The distinct members of cardinality `card`.
    pub fn level(&self, card: u32) -> Vec<SetWord> {
        let mut out: Vec<SetWord> = self.chains.iter().filter_map(|c| c.at_size(card)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks every structural constraint of the lantern definition.
    pub fn check(&self, params: LanternParams) -> Result<()> {
        let (s, t) = (params.s, params.t);
        let expected_chains = match self.kind {
            LanternKind::Upper => s - 1,
            LanternKind::Lower => t - 1,
        };
        if self.chains.len() as u32 != expected_chains {
            return Err(Error::defect(format!(
                "{:?} lantern has {} chains, expected {expected_chains}",
                self.kind,
                self.chains.len()
            )));
        }
        for (i, c) in self.chains.iter().enumerate() {
            if !c.is_complete() || c.bottom() != self.base || c.top() != self.top {
                return Err(Error::defect(format!("chain {i} is not a complete base-to-top chain")));
            }
            for d in &self.chains[i + 1..] {
                if c.internal().iter().any(|x| d.internal().contains(x)) {
                    return Err(Error::defect("chains share an internal set"));
                }
            }
        }
        let (first, last) = increment_sets(&self.chains)?;
        if (first, last) != (self.first_increment, self.last_increment) {
            return Err(Error::defect("recorded increment sets are stale"));
        }
        match self.kind {
            LanternKind::Upper if last != SetWord::interval(s + t + 1, 2 * s + t - 1) => {
                return Err(Error::defect(format!("upper lantern last increment {last}")));
            }
            LanternKind::Lower if first != SetWord::interval(s + t + 1, s + 2 * t - 1) => {
                return Err(Error::defect(format!("lower lantern first increment {first}")));
            }
            _ => {}
        }
        let core = SetWord::prefix(s + t - 1);
        if self.members().iter().any(|f| f.intersection(core) != self.base.intersection(core)) {
            return Err(Error::defect("lantern member leaves the base's trace on [s+t-1]"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[u32]) -> SetWord {
        SetWord::from_elements(xs.iter().copied()).unwrap()
    }

    #[test]
    fn two_element_bundle() {
        let chains = disjoint_chains(SetWord::EMPTY, s(&[1, 2]), &[1, 2]).unwrap();
        assert_eq!(chains[0].sets, vec![s(&[]), s(&[1]), s(&[1, 2])]);
        assert_eq!(chains[1].sets, vec![s(&[]), s(&[2]), s(&[1, 2])]);
    }

    #[test]
    fn degenerate_bundle() {
        let chains = disjoint_chains(s(&[3]), s(&[3]), &[]).unwrap();
        assert_eq!(chains, vec![Chain { sets: vec![s(&[3])] }]);
        assert!(chains[0].is_complete());
    }

    #[test]
    fn bundle_rejects_bad_input() {
        assert!(disjoint_chains(s(&[1]), s(&[2]), &[2]).is_err());
        assert!(disjoint_chains(SetWord::EMPTY, s(&[1, 2]), &[1]).is_err());
        assert!(disjoint_chains(SetWord::EMPTY, s(&[1, 2]), &[1, 1]).is_err());
        assert!(disjoint_chains(SetWord::EMPTY, s(&[1, 2]), &[1, 3]).is_err());
    }

    #[test]
    fn three_chain_bundle_internals_disjoint() {
        let chains = disjoint_chains(s(&[1]), s(&[1, 2, 3, 4]), &[2, 3, 4]).unwrap();
        assert_eq!(chains[1].sets, vec![s(&[1]), s(&[1, 3]), s(&[1, 3, 4]), s(&[1, 2, 3, 4])]);
        for i in 0..3 {
            for j in i + 1..3 {
                let shared: Vec<_> = chains[i]
                    .internal()
                    .iter()
                    .filter(|x| chains[j].internal().contains(x))
                    .collect();
                assert!(shared.is_empty(), "C{} and C{} share {shared:?}", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn increment_set_examples() {
        let single = Chain { sets: vec![s(&[]), s(&[1]), s(&[1, 2])] };
        assert_eq!(increment_sets(&[single]).unwrap(), (s(&[1]), s(&[2])));

        let chains = disjoint_chains(s(&[1]), s(&[1, 2, 3, 4]), &[2, 3, 4]).unwrap();
        assert_eq!(increment_sets(&chains[1..]).unwrap(), (s(&[3, 4]), s(&[2, 3])));
        assert_eq!(increment_sets(&chains).unwrap(), (s(&[2, 3, 4]), s(&[2, 3, 4])));

        let broken = Chain { sets: vec![s(&[]), s(&[1, 2])] };
        assert!(increment_sets(&[broken]).is_err());
    }

    #[test]
    fn upper_lantern_two_two_seven() {
        let p = LanternParams::new(2, 2, 7).unwrap();
        let l = Lantern::upper(s(&[1, 2]), p).unwrap();
        assert_eq!(l.chains.len(), 1);
        assert_eq!(
            l.chains[0].sets,
            vec![s(&[1, 2]), s(&[1, 2, 6]), s(&[1, 2, 6, 7]), s(&[1, 2, 5, 6, 7])]
        );
        assert_eq!(l.last_increment, s(&[5]));
        l.check(p).unwrap();

        let l = Lantern::upper(s(&[1, 3]), p).unwrap();
        assert!(l.members().iter().all(|f| f.intersection(SetWord::prefix(3)) == s(&[1, 3])));
    }

    #[test]
    fn upper_lantern_three_two_eight() {
        let p = LanternParams::new(3, 2, 8).unwrap();
        let l = Lantern::upper(s(&[1, 4]), p).unwrap();
        assert_eq!(l.chains.len(), 2);
        // (s-1)(n-s-t-1) + 2
        assert_eq!(l.members().len(), 2 * 2 + 2);
        assert_eq!(l.last_increment, s(&[6, 7]));
        l.check(p).unwrap();
    }

    #[test]
    fn lower_lantern_examples() {
        let p = LanternParams::new(2, 2, 7).unwrap();
        let l = Lantern::lower(s(&[1, 4]), p).unwrap();
        assert_eq!(
            l.chains[0].sets,
            vec![s(&[1, 4]), s(&[1, 4, 5]), s(&[1, 4, 5, 6]), s(&[1, 4, 5, 6, 7])]
        );
        assert_eq!(l.first_increment, s(&[5]));

        let p = LanternParams::new(3, 3, 10).unwrap();
        let l = Lantern::lower(s(&[1, 2, 6]), p).unwrap();
        assert_eq!(l.chains.len(), 2);
        assert_eq!(l.first_increment, s(&[7, 8]));
        l.check(p).unwrap();
    }

    #[test]
    fn lantern_at_minimum_n() {
        // k = n - s - t = s - 1: the cyclic index wraps and all chains are used
        let p = LanternParams::new(3, 2, 7).unwrap();
        let l = Lantern::upper(s(&[1, 2]), p).unwrap();
        assert_eq!(l.last_increment, s(&[6, 7]));
        l.check(p).unwrap();
        let p = LanternParams::new(2, 2, 5).unwrap();
        let l = Lantern::upper(s(&[1, 2]), p).unwrap();
        assert_eq!(l.members(), vec![s(&[1, 2]), s(&[1, 2, 5])]);
        l.check(p).unwrap();
    }

    #[test]
    fn lantern_params_validation() {
        assert!(matches!(LanternParams::new(2, 2, 4), Err(Error::Infeasible(_))));
        assert!(LanternParams::new(2, 3, 9).is_err());
        assert!(LanternParams::new(2, 1, 9).is_err());
        let p = LanternParams::new(2, 2, 7).unwrap();
        assert!(Lantern::upper(s(&[1, 5]), p).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        proptest! {
            #[test]
            fn bundles_are_complete_and_disjoint(n in 1u32..=16, a_bits in any::<u64>(), b_bits in any::<u64>(), seed in any::<u64>()) {
                let full = SetWord::prefix(n).bits();
                let b = SetWord::from_bits(b_bits & full);
                let a = SetWord::from_bits(a_bits & b.bits());
                let mut order = b.difference(a).elements();
                order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let chains = disjoint_chains(a, b, &order).unwrap();
                let k = b.difference(a).len() as usize;
                prop_assert_eq!(chains.len(), k.max(1));
                for (i, c) in chains.iter().enumerate() {
                    prop_assert!(c.is_complete());
                    prop_assert_eq!((c.bottom(), c.top()), (a, b));
                    for d in &chains[i + 1..] {
                        prop_assert!(c.internal().iter().all(|x| !d.internal().contains(x)));
                    }
                }
            }
        }
    }
}
