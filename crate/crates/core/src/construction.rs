//! The lantern construction of an induced `K_{s,t}`-saturated family
//! `F = F1 ∪ F2 ∪ F3 ∪ F4 ∪ F5` and its size accounting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chains::{Lantern, LanternKind, LanternParams};
use crate::error::{Error, Result};
use crate::sets::{binomial, k_subsets, Family, GroundSet, SetWord};
use crate::verifier::kst::find_induced_kst_through;

/// How lantern chains and greedy candidates are ordered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Ordering {
    #[default]
    Canonical,
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Canonical lanterns meet the increment-set constraints; shuffled ones
    /// pick an arbitrary element order and arbitrary chains of the bundle.
    pub lanterns: Ordering,
    pub f5: Ordering,
}

/// `F1..F4` together with the lanterns they were assembled from.
#[derive(Clone, Debug)]
pub struct Parts {
    pub params: LanternParams,
    pub f1: Family,
    pub f2: Family,
    pub f3: Family,
    pub f4: Family,
    pub upper_lanterns: Vec<Lantern>,
    pub lower_lanterns: Vec<Lantern>,
}

impl Parts {
    pub fn ground(&self) -> GroundSet {
        self.f1.ground()
    }

    /// `F' = F1 ∪ F2 ∪ F3 ∪ F4`.
    pub fn union(&self) -> Family {
        self.f1
            .union(&self.f2)
            .and_then(|f| f.union(&self.f3))
            .and_then(|f| f.union(&self.f4))
            .expect("parts share a ground set")
    }

    pub fn all(&self) -> [&Family; 4] {
        [&self.f1, &self.f2, &self.f3, &self.f4]
    }

    pub fn size_sum(&self) -> usize {
        self.all().iter().map(|f| f.len()).sum()
    }

    pub fn upper_lantern(&self, base: SetWord) -> Option<&Lantern> {
        self.upper_lanterns.iter().find(|l| l.base == base)
    }

    pub fn lower_lantern(&self, base: SetWord) -> Option<&Lantern> {
        self.lower_lanterns.iter().find(|l| l.base == base)
    }
}

/// `C(s+t-1, t)(s-1) + C(s+t-1, t-1)(t-1)`, the linear coefficient of the size bound.
pub fn coefficient(s: u32, t: u32) -> u64 {
    let m = (s + t - 1) as u64;
    binomial(m, t as u64) * (s as u64 - 1) + binomial(m, t as u64 - 1) * (t as u64 - 1)
}

pub fn build_parts(n: u32, s: u32, t: u32) -> Result<Parts> {
    build_parts_with(n, s, t, Ordering::Canonical)
}

pub fn build_parts_with(n: u32, s: u32, t: u32, lanterns: Ordering) -> Result<Parts> {
    let params = LanternParams::new(s, t, n)?;
    let ground = GroundSet::new(n)?;
    let core = SetWord::prefix(s + t - 1);

    let f1 = Family::from_sets(
        ground,
        std::iter::once(ground.full()).chain(core.iter().map(|x| ground.complement(SetWord::singleton(x)))),
    )?;
    let f4 = Family::from_sets(
        ground,
        std::iter::once(SetWord::EMPTY).chain(core.iter().map(SetWord::singleton)),
    )?;

    let mut rng = match lanterns {
        Ordering::Canonical => None,
        Ordering::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut make = |base: SetWord, kind: LanternKind| -> Result<Lantern> {
        match rng.as_mut() {
            None => match kind {
                LanternKind::Upper => Lantern::upper(base, params),
                LanternKind::Lower => Lantern::lower(base, params),
            },
            Some(rng) => {
                let mut order = params.tail();
                order.shuffle(rng);
                let count = match kind {
                    LanternKind::Upper => s - 1,
                    LanternKind::Lower => t - 1,
                } as usize;
                let mut picks: Vec<usize> = (0..order.len()).collect();
                picks.shuffle(rng);
                picks.truncate(count);
                Lantern::from_order(base, params, kind, &order, &picks)
            }
        }
    };

    let upper_lanterns = k_subsets(core, t)
        .into_iter()
        .map(|a| make(a, LanternKind::Upper))
        .collect::<Result<Vec<_>>>()?;
    let lower_lanterns = k_subsets(core, t - 1)
        .into_iter()
        .map(|a| make(a.with(s + t), LanternKind::Lower))
        .collect::<Result<Vec<_>>>()?;

    let f2 = Family::from_sets(ground, upper_lanterns.iter().flat_map(|l| l.members()))?;
    let f3 = Family::from_sets(ground, lower_lanterns.iter().flat_map(|l| l.members()))?;

    Ok(Parts { params, f1, f2, f3, f4, upper_lanterns, lower_lanterns })
}

/// The two greedy candidate pools, each in canonical order (size of the
/// defining subset, then colex of it):
/// `G1 = {A^c : A ⊆ [2s+t-1], 2 <= |A| <= s}` and `G2 = {A ⊆ [s+2t-1] : 2 <= |A| <= t}`.
pub fn f5_candidates(n: u32, s: u32, t: u32) -> Result<(Vec<SetWord>, Vec<SetWord>)> {
    let ground = GroundSet::new(n)?;
    let pool1 = SetWord::prefix(2 * s + t - 1);
    let pool2 = SetWord::prefix(s + 2 * t - 1);
    if !ground.contains(pool1) || !ground.contains(pool2) {
        return Err(Error::Infeasible(format!("n = {n} too small for the candidate pools")));
    }
    let g1 = (2..=s)
        .flat_map(|i| k_subsets(pool1, i))
        .map(|a| ground.complement(a))
        .collect();
    let g2 = (2..=t).flat_map(|i| k_subsets(pool2, i)).collect();
    Ok((g1, g2))
}

/// Greedily grows a maximal `F5 ⊆ G1 ∪ G2` keeping `F' ∪ F5` induced `K_{s,t}`-free.
/// Candidates already in `F'` are kept (they add nothing).
pub fn build_f5(parts: &Parts, order: Ordering) -> Result<Family> {
    let LanternParams { s, t, n } = parts.params;
    let (g1, g2) = f5_candidates(n, s, t)?;
    let mut candidates: Vec<SetWord> = g1.into_iter().chain(g2).collect();
    if let Ordering::Shuffled(seed) = order {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut current = parts.union();
    let mut chosen = Vec::new();
    for g in candidates {
        if current.contains(g) {
            chosen.push(g);
        } else if find_induced_kst_through(&current, s as usize, t as usize, g).is_none() {
            current = current.insert(g)?;
            chosen.push(g);
        }
    }
    Family::from_sets(parts.ground(), chosen)
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub n: u32,
    /// Requested parameters; may have `s < t`.
    pub s: u32,
    pub t: u32,
    /// True when built as the complement of the `K_{t,s}` construction.
    pub mirrored: bool,
    pub options: Options,
    /// Parts in the `s >= t` orientation.
    pub parts: Parts,
    pub f5: Family,
    /// Final family in the requested orientation.
    pub family: Family,
    pub g1_size: usize,
    pub g2_size: usize,
    pub coefficient: u64,
    /// `|F| - (|F1| + |F2| + |F3| + |F4|)`.
    pub constant_observed: usize,
}

impl Construction {
    /// `(s, t)` with `s >= t`, the orientation the parts were built in.
    pub fn oriented(&self) -> (u32, u32) {
        (self.parts.params.s, self.parts.params.t)
    }

    /// The family in the `s >= t` orientation.
    pub fn oriented_family(&self) -> Family {
        if self.mirrored {
            self.family.complemented()
        } else {
            self.family.clone()
        }
    }

    pub fn linear_bound(&self) -> u64 {
        self.coefficient * self.n as u64
    }

    /// `coefficient * n + |F5|`.
    pub fn bound(&self) -> u64 {
        self.linear_bound() + self.f5.len() as u64
    }

    /// Candidates of `G1 ∪ G2` outside `F5` whose addition does *not* create an
    /// induced copy. Empty iff `F5` is maximal.
    pub fn f5_maximality_failures(&self) -> Result<Vec<SetWord>> {
        let (s, t) = self.oriented();
        let (g1, g2) = f5_candidates(self.n, s, t)?;
        let fam = self.oriented_family();
        Ok(g1
            .into_iter()
            .chain(g2)
            .filter(|g| !self.f5.contains(*g))
            .filter(|&g| find_induced_kst_through(&fam, s as usize, t as usize, g).is_none())
            .collect())
    }
}

pub fn build_saturated_family(n: u32, s: u32, t: u32) -> Result<Construction> {
    build_saturated_family_with(n, s, t, Options::default())
}

pub fn build_saturated_family_with(n: u32, s: u32, t: u32, options: Options) -> Result<Construction> {
    if s == 0 || t == 0 {
        return Err(Error::usage(format!("s and t must be positive, got ({s},{t})")));
    }
    if (s, t) == (1, 1) {
        return Err(Error::Unsupported(
            "K_{1,1} is trivial: its induced saturation number is 1".into(),
        ));
    }
    let mirrored = s < t;
    let (hi, lo) = if mirrored { (t, s) } else { (s, t) };
    if lo < 2 {
        return Err(Error::Unsupported(format!(
            "the lantern construction needs min(s,t) >= 2, got ({s},{t})"
        )));
    }
    let parts = build_parts_with(n, hi, lo, options.lanterns)?;
    let f5 = build_f5(&parts, options.f5)?;
    let oriented = parts.union().union(&f5)?;
    let (g1, g2) = f5_candidates(n, hi, lo)?;
    let constant_observed = oriented.len() - parts.size_sum();
    let family = if mirrored { oriented.complemented() } else { oriented };
    Ok(Construction {
        n,
        s,
        t,
        mirrored,
        options,
        g1_size: g1.len(),
        g2_size: g2.len(),
        coefficient: coefficient(hi, lo),
        constant_observed,
        parts,
        f5,
        family,
    })
}
