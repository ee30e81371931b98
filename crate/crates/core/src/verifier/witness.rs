//! Explicit induced copies for sets missing from the lantern construction.
//!
//! Cases are keyed on `k = |F ∩ [s+t-1]|`:
//! * `k = 0` or `k = s+t-1`: singletons and co-singletons only;
//! * `1 <= k <= t-1`: a lower layer taken from a lower lantern, uppers are co-singletons;
//! * `t <= k < s+t-1`: an upper layer taken from an upper lantern, lowers are singletons.
//!
//! Sets in the greedy candidate pools that were rejected get their copy from
//! the detector, since the greedy step rejected them for exactly that reason.

use crate::chains::Lantern;
use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::sets::{Family, GroundSet, SetWord};
use crate::verifier::kst::{find_induced_kst_through, InducedKstCopy};

/// Builds an induced `K_{s,t}` in `con.family ∪ {missing}` through `missing`.
///
/// Fails with [`Error::Usage`] if `missing` is already in the family and with
/// [`Error::Defect`] if the case analysis does not produce a valid copy.
pub fn witness_for_missing(missing: SetWord, con: &Construction) -> Result<InducedKstCopy> {
    let ground = con.family.ground();
    ground.check(missing)?;
    if con.family.contains(missing) {
        return Err(Error::usage(format!("{missing} is a member of the family")));
    }
    if !con.mirrored {
        let copy = oriented_witness(missing, con, &con.family)?;
        return checked(copy, missing, &con.family, con.s as usize, con.t as usize);
    }
    // the requested family is the complement of the oriented one; so is the copy
    let oriented = con.oriented_family();
    let copy = oriented_witness(ground.complement(missing), con, &oriented)?;
    let flip = |v: Vec<SetWord>| -> Vec<SetWord> { v.into_iter().map(|x| ground.complement(x)).collect() };
    let copy = InducedKstCopy { uppers: flip(copy.lowers), lowers: flip(copy.uppers) };
    checked(copy, missing, &con.family, con.s as usize, con.t as usize)
}

fn checked(copy: InducedKstCopy, missing: SetWord, fam: &Family, s: usize, t: usize) -> Result<InducedKstCopy> {
    copy.validate(s, t)
        .map_err(|e| Error::defect(format!("witness for {missing} is not an induced K_{{{s},{t}}}: {e}")))?;
    if !copy.contains(missing) {
        return Err(Error::defect(format!("witness for {missing} does not use it")));
    }
    if let Some(stray) = copy.sets().find(|&x| x != missing && !fam.contains(x)) {
        return Err(Error::defect(format!("witness for {missing} uses non-member {stray}")));
    }
    Ok(copy)
}

fn in_candidate_pools(f: SetWord, ground: GroundSet, s: u32, t: u32) -> bool {
    let c = ground.complement(f);
    (c.is_subset(SetWord::prefix(2 * s + t - 1)) && (2..=s).contains(&c.len()))
        || (f.is_subset(SetWord::prefix(s + 2 * t - 1)) && (2..=t).contains(&f.len()))
}

fn oriented_witness(f: SetWord, con: &Construction, fam: &Family) -> Result<InducedKstCopy> {
    let (s, t) = con.oriented();
    let n = con.n;
    let ground = fam.ground();
    let m = s + t - 1;
    let core = SetWord::prefix(m);
    let trace = f.intersection(core);
    let k = trace.len();
    let singles = |xs: &[u32]| xs.iter().map(|&x| SetWord::singleton(x)).collect::<Vec<_>>();
    let co_singles = |xs: &[u32]| xs.iter().map(|&x| ground.complement(SetWord::singleton(x))).collect::<Vec<_>>();

    if k == 0 {
        if f.is_empty() {
            return Err(Error::defect("the empty set is always in the family"));
        }
        let mut lowers = vec![f];
        lowers.extend(singles(&(1..t).collect::<Vec<_>>()));
        let uppers = co_singles(&(t..=m).collect::<Vec<_>>());
        return Ok(InducedKstCopy { uppers, lowers });
    }
    if k == m {
        if f == ground.full() {
            return Err(Error::defect("[n] is always in the family"));
        }
        let mut uppers = vec![f];
        uppers.extend(co_singles(&(1..s).collect::<Vec<_>>()));
        let lowers = singles(&(s..=m).collect::<Vec<_>>());
        return Ok(InducedKstCopy { uppers, lowers });
    }

    if in_candidate_pools(f, ground, s, t) {
        return find_induced_kst_through(fam, s as usize, t as usize, f).ok_or_else(|| {
            Error::defect(format!("rejected greedy candidate {f} completes no copy"))
        });
    }

    if k < t {
        // A ⊇ trace with |A| = t-1, padded with the smallest free core elements
        let pad: Vec<u32> = core.difference(trace).iter().take((t - 1 - k) as usize).collect();
        let a = pad.iter().fold(trace, |acc, &x| acc.with(x));
        let lantern = lantern(con.parts.lower_lantern(a.with(s + t)), "lower", a)?;
        let size = f.len();
        let others = if size <= t {
            // |F| >= 2 here: singletons inside the core are in F4
            lantern.level(t + 1)
        } else if size < n - s {
            lantern.level(size)
        } else {
            return Err(Error::defect(format!(
                "{f} has |F| >= n - s but is not the top of the lower lantern over {a}"
            )));
        };
        let mut lowers = vec![f];
        lowers.extend(take_exact(others, (t - 1) as usize, f)?);
        let outside: Vec<u32> = core.difference(a).elements();
        return Ok(InducedKstCopy { uppers: co_singles(&outside), lowers });
    }

    // t <= k < s+t-1
    let a = trace.iter().take(t as usize).fold(SetWord::EMPTY, |acc, x| acc.with(x));
    let lantern = lantern(con.parts.upper_lantern(a), "upper", a)?;
    let size = f.len();
    let others = if size < n - s {
        if size == t {
            return Err(Error::defect(format!("{f} equals the upper lantern base")));
        }
        lantern.level(size)
    } else {
        // some x in [2s+t, n] is missing from F, while every set one below
        // the lantern top contains A ∪ [2s+t, n]
        if SetWord::interval(2 * s + t, n).difference(f).is_empty() {
            return Err(Error::defect(format!("{f} contains [2s+t, n]")));
        }
        lantern.level(n - s - 1)
    };
    let mut uppers = vec![f];
    uppers.extend(take_exact(others, (s - 1) as usize, f)?);
    Ok(InducedKstCopy { uppers, lowers: singles(&a.elements()) })
}

fn lantern<'a>(l: Option<&'a Lantern>, kind: &str, base: SetWord) -> Result<&'a Lantern> {
    l.ok_or_else(|| Error::defect(format!("no {kind} lantern over {base}")))
}

fn take_exact(level: Vec<SetWord>, count: usize, f: SetWord) -> Result<Vec<SetWord>> {
    if level.len() < count {
        return Err(Error::defect(format!(
            "lantern level for {f} has {} sets, need {count}",
            level.len()
        )));
    }
    Ok(level.into_iter().take(count).collect())
}
