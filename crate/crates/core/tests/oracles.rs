//! Independent brute-force oracles checked against the library.

use posetsat::construction::{build_parts, build_saturated_family};
use posetsat::oracle::{exact_sat_star, DEFAULT_BUDGET};
use posetsat::poset::{find_induced_copy, is_induced_saturated};
use posetsat::sets::{Family, GroundSet, SetWord};
use posetsat::verifier::{check_saturated, find_induced_kst, legs_certificate_with, Codomain};
use posetsat::Poset;
use proptest::prelude::*;

/// Tries every injective map from `P` into `fam` and checks the induced order.
fn naive_contains(fam: &[SetWord], p: &Poset) -> bool {
    fn go(fam: &[SetWord], p: &Poset, image: &mut Vec<usize>) -> bool {
        let k = image.len();
        if k == p.size() {
            return true;
        }
        for j in 0..fam.len() {
            if image.contains(&j) {
                continue;
            }
            let ok = (0..k).all(|i| {
                let (a, b) = (fam[image[i]], fam[j]);
                p.leq(i, k) == a.is_subset(b) && p.leq(k, i) == b.is_subset(a)
            });
            if ok {
                image.push(j);
                if go(fam, p, image) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    go(fam, p, &mut Vec::new())
}

fn naive_saturated(fam: &Family, p: &Poset) -> bool {
    if naive_contains(fam.members(), p) {
        return false;
    }
    let cube = 1u64 << fam.n();
    (0..cube).map(SetWord::from_bits).filter(|x| !fam.contains(*x)).all(|x| {
        let mut sets = fam.members().to_vec();
        sets.push(x);
        naive_contains(&sets, p)
    })
}

fn small_posets() -> Vec<Poset> {
    let mut out = vec![
        Poset::antichain(2).unwrap(),
        Poset::antichain(3).unwrap(),
        Poset::chain(3).unwrap(),
        // diamond
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
        // N
        Poset::from_covers(4, &[(0, 2), (1, 2), (1, 3)]).unwrap(),
        // Y
        Poset::from_covers(4, &[(0, 1), (1, 2), (1, 3)]).unwrap(),
        // chain plus isolated point
        Poset::from_covers(5, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
    ];
    for (s, t) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2)] {
        out.push(Poset::complete_bipartite(s, t).unwrap());
    }
    out
}

fn family_strategy(max_n: u32, max_len: usize) -> impl Strategy<Value = Family> {
    (1..=max_n).prop_flat_map(move |n| {
        let g = GroundSet::new(n).unwrap();
        prop::collection::vec(0..(1u64 << n), 0..=max_len)
            .prop_map(move |v| Family::from_sets(g, v.into_iter().map(SetWord::from_bits)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn embedder_matches_injective_maps(fam in family_strategy(5, 8), pi in 0usize..13) {
        let p = &small_posets()[pi];
        let found = find_induced_copy(&fam, p);
        prop_assert_eq!(found.is_some(), naive_contains(fam.members(), p));
        if let Some(e) = found {
            prop_assert!(e.is_induced(&fam, p));
        }
    }

    #[test]
    fn kst_detector_matches_injective_maps(fam in family_strategy(5, 10), s in 1usize..=3, t in 1usize..=3) {
        let p = Poset::complete_bipartite(s, t).unwrap();
        let found = find_induced_kst(&fam, s, t);
        prop_assert_eq!(found.is_some(), naive_contains(fam.members(), &p));
        if let Some(c) = found {
            prop_assert!(c.validate(s, t).is_ok());
            prop_assert!(c.sets().all(|x| fam.contains(x)));
        }
    }

    #[test]
    fn complement_swaps_layers(fam in family_strategy(7, 16), s in 1usize..=3, t in 1usize..=3) {
        prop_assert_eq!(
            find_induced_kst(&fam, s, t).is_some(),
            find_induced_kst(&fam.complemented(), t, s).is_some()
        );
        prop_assert_eq!(fam.complemented().complemented(), fam);
    }

    #[test]
    fn saturation_matches_naive(fam in family_strategy(3, 6), pi in 0usize..13) {
        let p = &small_posets()[pi];
        prop_assert_eq!(is_induced_saturated(&fam, p), naive_saturated(&fam, p));
    }
}

#[test]
fn kst_saturation_report_matches_naive() {
    // a few hand-picked families around the antichain and chain extremes
    for n in 2..=4u32 {
        let g = GroundSet::new(n).unwrap();
        let chain = Family::from_sets(g, (0..=n).map(SetWord::prefix)).unwrap();
        let cube = Family::power_set(g);
        for fam in [chain, cube] {
            for (s, t) in [(1, 1), (2, 1), (2, 2)] {
                let p = Poset::complete_bipartite(s, t).unwrap();
                let report = check_saturated(&fam, s, t);
                assert_eq!(report.saturated, naive_saturated(&fam, &p), "n={n} ({s},{t})");
            }
        }
    }
}

#[test]
fn exact_values_are_saturated_and_minimal() {
    for (s, t) in [(1, 1), (2, 1), (2, 2)] {
        let p = Poset::complete_bipartite(s, t).unwrap();
        for n in 1..=3u32 {
            let r = exact_sat_star(n, &p, DEFAULT_BUDGET).unwrap();
            let value = r.value.unwrap();
            assert!(r.witnesses.iter().all(|w| w.len() == value && naive_saturated(w, &p)));
            // brute force: no smaller saturated family anywhere in the cube
            let cube = 1u32 << n;
            let smaller = (0u64..1 << cube)
                .filter(|mask| (mask.count_ones() as usize) < value)
                .map(|mask| {
                    let g = GroundSet::new(n).unwrap();
                    Family::from_sets(g, (0..cube as u64).filter(|i| mask >> i & 1 == 1).map(SetWord::from_bits))
                        .unwrap()
                })
                .any(|f| naive_saturated(&f, &p));
            assert!(!smaller, "n={n} K_{{{s},{t}}}");
        }
    }
}

#[test]
fn legged_bipartite_posets_need_n_plus_one() {
    for (s, t) in [(1, 2), (2, 2), (3, 2)] {
        let p = Poset::complete_bipartite(s, t).unwrap();
        for n in 1..=4u32 {
            let r = exact_sat_star(n, &p, DEFAULT_BUDGET).unwrap();
            assert!(!r.exhausted);
            assert!(r.value.unwrap() > n as usize, "n={n} K_{{{s},{t}}}: {:?}", r.value);
        }
    }
}

#[test]
fn proper_codomain_on_k22_minimisers() {
    let p = Poset::complete_bipartite(2, 2).unwrap();
    for n in 1..=4u32 {
        let r = exact_sat_star(n, &p, DEFAULT_BUDGET).unwrap();
        for w in &r.witnesses {
            let cert = legs_certificate_with(w, &p, Codomain::Proper).unwrap();
            cert.ensure_valid().unwrap();
            assert!(w.len() as u64 >= (n as u64 + 2).min(1 << n));
        }
    }
}

#[test]
fn f5_size_is_independent_of_n() {
    let sizes: Vec<usize> = (5..=12).map(|n| build_saturated_family(n, 2, 2).unwrap().f5.len()).collect();
    assert!(sizes.windows(2).all(|w| w[0] == w[1]), "{sizes:?}");
}

#[test]
fn parts_are_pairwise_disjoint() {
    for (n, s, t) in [(5, 2, 2), (7, 2, 2), (8, 3, 2), (9, 3, 3), (10, 4, 2)] {
        let parts = build_parts(n, s, t).unwrap();
        let all = parts.all();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(all[i].intersection(all[j]).is_empty(), "({n},{s},{t}) F{} and F{}", i + 1, j + 1);
            }
        }
        assert_eq!(parts.union().len(), parts.size_sum());
    }
}

#[test]
fn mirrored_construction_is_saturated() {
    for (n, s, t) in [(7, 2, 3), (9, 2, 4)] {
        let con = build_saturated_family(n, s, t).unwrap();
        assert!(con.mirrored);
        assert!(check_saturated(&con.family, s as usize, t as usize).saturated);
    }
}
