//! Graphviz output for families (Hasse diagram of `(F, ⊆)`, ranked by cardinality).

use std::fmt::Write as _;

use crate::sets::{Family, SetWord};

/// Cover pairs `(i, j)` of member indices: `F_i ⊂ F_j` with nothing in between.
pub fn family_covers(fam: &Family) -> Vec<(usize, usize)> {
    let m = fam.members();
    let mut out = Vec::new();
    for j in 0..m.len() {
        for i in 0..m.len() {
            if m[i].is_strict_subset(m[j])
                && !m.iter().any(|&k| m[i].is_strict_subset(k) && k.is_strict_subset(m[j]))
            {
                out.push((i, j));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn family_to_dot(fam: &Family) -> String {
    let m = fam.members();
    let mut out = String::from("digraph family {\n  rankdir=BT;\n  node [shape=box];\n");
    let mut card = None;
    for (i, set) in m.iter().enumerate() {
        if card != Some(set.len()) {
            if card.is_some() {
                out.push_str(" }\n");
            }
            card = Some(set.len());
            out.push_str("  { rank=same;");
        }
        let _ = write!(out, " f{i};");
    }
    if card.is_some() {
        out.push_str(" }\n");
    }
    for (i, set) in m.iter().enumerate() {
        let _ = writeln!(out, "  f{i} [label=\"{}\"];", label(*set));
    }
    for (i, j) in family_covers(fam) {
        let _ = writeln!(out, "  f{i} -> f{j} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

fn label(set: SetWord) -> String {
    if set.is_empty() {
        "∅".to_string()
    } else {
        set.to_string()
    }
}
