//! Brute-force check of the two trace bounds on `F' = F1 ∪ ... ∪ F4`:
//! any `s` pairwise incomparable members meet in fewer than `t` core elements,
//! and any `t` pairwise incomparable members cover at least `t` core elements
//! (core = `[s+t-1]`). Together they rule out an induced `K_{s,t}` in `F'`.

use crate::construction::Parts;
use crate::sets::SetWord;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayerReport {
    /// Number of `s`-antichains inspected.
    pub upper_antichains: u64,
    /// Number of `t`-antichains inspected.
    pub lower_antichains: u64,
    pub intersection_counterexample: Option<Vec<SetWord>>,
    pub union_counterexample: Option<Vec<SetWord>>,
}

impl LayerReport {
    pub fn passed(&self) -> bool {
        self.intersection_counterexample.is_none() && self.union_counterexample.is_none()
    }
}

pub fn check_layer_bounds(parts: &Parts) -> LayerReport {
    let (s, t) = (parts.params.s, parts.params.t);
    let core = SetWord::prefix(s + t - 1);
    let members = parts.union();
    let members = members.members();
    let mut report = LayerReport::default();

    let mut chosen = Vec::new();
    for_each_antichain(members, s as usize, 0, &mut chosen, &mut |ac| {
        report.upper_antichains += 1;
        let meet = ac.iter().fold(core, |acc, f| acc.intersection(*f));
        if meet.len() >= t {
            report.intersection_counterexample = Some(ac.to_vec());
            return false;
        }
        true
    });

    chosen.clear();
    for_each_antichain(members, t as usize, 0, &mut chosen, &mut |ac| {
        report.lower_antichains += 1;
        let join = ac.iter().fold(SetWord::EMPTY, |acc, f| acc.union(f.intersection(core)));
        if join.len() < t {
            report.union_counterexample = Some(ac.to_vec());
            return false;
        }
        true
    });
    report
}

fn for_each_antichain(
    pool: &[SetWord],
    k: usize,
    start: usize,
    chosen: &mut Vec<SetWord>,
    visit: &mut dyn FnMut(&[SetWord]) -> bool,
) -> bool {
    if chosen.len() == k {
        return visit(chosen);
    }
    for i in start..pool.len() {
        let m = pool[i];
        if chosen.iter().any(|c| c.is_comparable(m)) {
            continue;
        }
        chosen.push(m);
        let go_on = for_each_antichain(pool, k, i + 1, chosen, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}
