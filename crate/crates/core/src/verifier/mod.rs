//! Freeness and saturation checks, constructive witnesses, and the legs
//! lower-bound certificate.

pub mod kst;
pub mod layers;
pub mod legs;
pub mod witness;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::sets::{Family, SetWord};

pub use kst::{find_induced_kst, find_induced_kst_through, CopyJson, InducedKstCopy};
pub use layers::{check_layer_bounds, LayerReport};
pub use legs::{legs_certificate, legs_certificate_with, Codomain, LegsCertificate};
pub use witness::witness_for_missing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Adding this absent set creates no induced copy.
    NotSaturatedAt(SetWord),
    /// The family itself already contains an induced copy.
    CopyInside(InducedKstCopy),
}

#[derive(Clone, Debug, Default)]
pub struct SaturationReport {
    pub free: bool,
    pub saturated: bool,
    pub violations: Vec<Violation>,
    /// One copy through each absent set that completes one.
    pub witnesses: BTreeMap<SetWord, InducedKstCopy>,
    pub missing_checked: usize,
}

impl SaturationReport {
    /// Combines reports over disjoint batches of absent sets. Associative.
    fn merge(mut self, other: SaturationReport) -> SaturationReport {
        self.violations.extend(other.violations);
        self.witnesses.extend(other.witnesses);
        self.missing_checked += other.missing_checked;
        self
    }
}

/// Exhaustive induced `K_{s,t}`-saturation check: freeness of `fam`, then for
/// every absent set a copy through it. The scan over absent sets runs in parallel.
pub fn check_saturated(fam: &Family, s: usize, t: usize) -> SaturationReport {
    let inside = find_induced_kst(fam, s, t);
    let missing: Vec<SetWord> = fam.missing_sets().collect();
    let mut report = missing
        .par_chunks(64)
        .map(|chunk| {
            let mut part = SaturationReport::default();
            for &x in chunk {
                part.missing_checked += 1;
                match find_induced_kst_through(fam, s, t, x) {
                    Some(copy) => {
                        part.witnesses.insert(x, copy);
                    }
                    None => part.violations.push(Violation::NotSaturatedAt(x)),
                }
            }
            part
        })
        .reduce(SaturationReport::default, SaturationReport::merge);
    report.violations.sort_by_key(|v| match v {
        Violation::NotSaturatedAt(x) => x.bits(),
        Violation::CopyInside(_) => 0,
    });
    report.free = inside.is_none();
    if let Some(copy) = inside {
        report.violations.insert(0, Violation::CopyInside(copy));
    }
    report.saturated = report.free && report.violations.is_empty();
    report
}
