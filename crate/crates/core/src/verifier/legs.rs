//! Certificate for the `n + 1` lower bound on posets with legs.
//!
//! For every singleton `{x}` missing from a saturated family, a *partner* is a
//! member `C` such that `{x}` and `C` are the legs of an induced copy in
//! `F ∪ {{x}}`. With `C_x` the largest partner, `f(x) = C_x ∪ {x}` (or `{x}` when
//! the singleton is present) must be a nonempty member, and `f` must be
//! injective; hence `|F \ {∅}| >= n`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::{classify_legs, is_induced_saturated, Embedder, Poset};
use crate::sets::{Family, SetWord};

/// Where `f` is required to land.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Codomain {
    /// `F \ {∅}`, giving `|F| >= n + 1`.
    #[default]
    NonEmpty,
    /// `F \ {∅, [n]}`, giving `|F| >= min(2^n, n + 2)`. Requires a nonempty
    /// body and no maximum element.
    Proper,
}

#[derive(Clone, Debug)]
pub struct LegsCertificate {
    pub poset: Poset,
    pub legs: (usize, usize),
    pub codomain: Codomain,
    /// Largest partner (by cardinality, then colex) for each missing singleton.
    pub partners: BTreeMap<u32, SetWord>,
    pub f_map: BTreeMap<u32, SetWord>,
    pub family_size: usize,
    /// The size bound implied by a valid certificate.
    pub lower_bound: u64,
    pub failures: Vec<String>,
    pub valid: bool,
}

impl LegsCertificate {
    pub fn ensure_valid(&self) -> Result<()> {
        if self.valid {
            Ok(())
        } else {
            Err(Error::CertificateInvalid(self.failures.join("; ")))
        }
    }
}

pub fn legs_certificate(fam: &Family, p: &Poset) -> Result<LegsCertificate> {
    legs_certificate_with(fam, p, Codomain::NonEmpty)
}

pub fn legs_certificate_with(fam: &Family, p: &Poset, codomain: Codomain) -> Result<LegsCertificate> {
    let profile = classify_legs(p);
    let (a, b) = profile
        .legs
        .ok_or_else(|| Error::usage("poset has no legs"))?;
    if codomain == Codomain::Proper && (p.size() <= 2 || p.has_maximum()) {
        return Err(Error::usage("proper codomain needs a nonempty body and no maximum"));
    }
    if !is_induced_saturated(fam, p) {
        return Err(Error::usage("family is not induced saturated for this poset"));
    }

    let n = fam.n();
    let full = fam.ground().full();
    let mut partners = BTreeMap::new();
    let mut f_map = BTreeMap::new();
    let mut failures = Vec::new();

    for x in 1..=n {
        let single = SetWord::singleton(x);
        if fam.contains(single) {
            f_map.insert(x, single);
            continue;
        }
        let Some(c) = largest_partner(fam, p, (a, b), single)? else {
            failures.push(format!("{single} has no partner"));
            continue;
        };
        partners.insert(x, c);
        if c.contains(x) {
            failures.push(format!("partner {c} of {x} contains {x}"));
        }
        let image = c.with(x);
        if !fam.contains(image) {
            failures.push(format!("{image} = C_{x} ∪ {{{x}}} is not a member"));
        }
        f_map.insert(x, image);
    }

    for (&x, &image) in &f_map {
        if image.is_empty() {
            failures.push(format!("f({x}) is empty"));
        }
        if codomain == Codomain::Proper && image == full && n > 1 {
            failures.push(format!("f({x}) = [n]"));
        }
    }
    let mut seen: BTreeMap<SetWord, u32> = BTreeMap::new();
    for (&x, &image) in &f_map {
        if let Some(&y) = seen.get(&image) {
            failures.push(format!("f({y}) = f({x}) = {image}"));
        }
        seen.insert(image, x);
    }

    let lower_bound = match codomain {
        Codomain::NonEmpty => n as u64 + 1,
        Codomain::Proper => (n as u64 + 2).min(1u64 << n.min(63)),
    };
    let has_anchors = fam.contains(SetWord::EMPTY) && (codomain == Codomain::NonEmpty || fam.contains(full));
    if !has_anchors {
        failures.push("saturated family is missing ∅ or [n]".to_string());
    }
    if failures.is_empty() && (fam.len() as u64) < lower_bound {
        failures.push(format!("|F| = {} below the certified bound {lower_bound}", fam.len()));
    }

    Ok(LegsCertificate {
        poset: p.clone(),
        legs: (a, b),
        codomain,
        partners,
        f_map,
        family_size: fam.len(),
        lower_bound,
        valid: failures.is_empty(),
        failures,
    })
}

/// The largest member `C` (cardinality, then colex) such that `single` and `C`
/// are the images of the legs in an induced copy inside `fam ∪ {single}`.
fn largest_partner(fam: &Family, p: &Poset, legs: (usize, usize), single: SetWord) -> Result<Option<SetWord>> {
    let augmented = fam.insert(single)?;
    let xi = augmented.index_of(single).expect("inserted");
    for &c in fam.members().iter().rev() {
        if c.is_comparable(single) {
            continue;
        }
        let ci = augmented.index_of(c).expect("member");
        if Embedder::new(&augmented, p).pin(legs.0, xi).pin(legs.1, ci).exists() {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
