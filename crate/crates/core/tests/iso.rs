use biquandle_core::{
    alexander_table, all_isomorphisms, brute_force_iso, extract_witness, is_bijection, is_homomorphism,
    structural_iso, translation_map, BiquandleTable, ElementOrder, FiniteModule, ModuleIso,
};
use proptest::prelude::*;

fn scalar_modules(sizes: std::ops::RangeInclusive<u32>) -> Vec<FiniteModule> {
    let mut out = Vec::new();
    for m in sizes {
        for s in 1..m as i64 {
            for t in 1..m as i64 {
                if let Ok(module) = FiniteModule::scalar(m, s, t) {
                    out.push(module);
                }
            }
        }
    }
    out
}

fn table(m: &FiniteModule) -> BiquandleTable {
    alexander_table(m, ElementOrder::Canonical)
}

fn inverse(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (x, &y) in f.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn structural_agrees_with_brute_force_up_to_six() {
    for m in 2..=6 {
        let modules = scalar_modules(m..=m);
        for a in &modules {
            for b in &modules {
                let (w, _) = structural_iso(a, b);
                let brute = brute_force_iso(&table(a), &table(b)).unwrap().witness;
                assert_eq!(w.is_some(), brute.is_some(), "{a:?} vs {b:?}");
                if let Some(w) = w {
                    assert!(is_bijection(&w.f, b.size()));
                    assert!(is_homomorphism(&table(a), &table(b), &w.f).unwrap());
                    assert!(is_homomorphism(&table(b), &table(a), &inverse(&w.f)).unwrap());
                    assert_eq!(w.f[0], 0);
                }
                let (back, _) = structural_iso(b, a);
                assert_eq!(back.is_some(), brute.is_some());
            }
        }
    }
}

#[test]
fn isomorphic_tables_share_degree_profiles() {
    let modules = scalar_modules(2..=7);
    for a in &modules {
        for b in modules.iter().filter(|b| b.size() == a.size()) {
            let (ta, tb) = (table(a), table(b));
            if brute_force_iso(&ta, &tb).unwrap().witness.is_some() {
                assert_eq!(ta.degree_profile(), tb.degree_profile());
            }
        }
    }
}

#[test]
fn witness_extraction_round_trip() {
    for a in scalar_modules(2..=6) {
        let ta = table(&a);
        for f in all_isomorphisms(&ta, &ta).unwrap() {
            let w = extract_witness(&a, &a, &f).unwrap();
            assert_eq!(w.f[0], 0);
            assert!(w.k.iter().zip(&w.reps).all(|(&k, &r)| w.f[r] == k));
        }
    }
}

#[test]
fn z3_self_isomorphisms_match_a_permutation_scan() {
    let m = FiniteModule::scalar(3, 2, 1).unwrap();
    let t = table(&m);
    let scan: Vec<Vec<usize>> =
        permutations(3).into_iter().filter(|p| is_homomorphism(&t, &t, p).unwrap()).collect();
    let mut scan_sorted = scan.clone();
    scan_sorted.sort();
    assert_eq!(all_isomorphisms(&t, &t).unwrap(), scan_sorted);
    // 1 - s = -1 is a unit, so automorphisms fix 0: the identity and negation
    assert_eq!(scan_sorted, vec![vec![0, 1, 2], vec![0, 2, 1]]);
}

#[test]
fn kernel_translation_extracts_to_identity() {
    let m = FiniteModule::scalar(8, 3, 5).unwrap();
    let w = extract_witness(&m, &m, &translation_map(&m, 4)).unwrap();
    assert_eq!(w.h, ModuleIso::from_pairs(vec![(0, 0), (2, 2), (4, 4), (6, 6)]));
    assert_eq!(w.reps, vec![0, 1]);
    assert_eq!(w.k, vec![0, 1]);
    assert_eq!(w.f, (0..8).collect::<Vec<_>>());
}

#[test]
fn z8_cross_pair_has_no_isomorphism() {
    let (a, b) = (FiniteModule::scalar(8, 3, 5).unwrap(), FiniteModule::scalar(8, 5, 3).unwrap());
    assert!(all_isomorphisms(&table(&a), &table(&b)).unwrap().is_empty());
    let (w, stats) = structural_iso(&a, &b);
    assert!(w.is_none());
    assert_eq!(stats.nodes, 0, "no module isomorphism, so no representative search");
}

proptest! {
    #[test]
    fn relabeling_is_detected(
        which in 0usize..40,
        shuffled in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let modules = scalar_modules(5..=7);
        let m = &modules[which % modules.len()];
        let t = table(m);
        let n = t.order();
        let perm: Vec<usize> = shuffled.into_iter().filter(|&x| x < n).collect();
        let r = t.relabeled(&perm).unwrap();
        let f = brute_force_iso(&t, &r).unwrap().witness.unwrap();
        prop_assert!(is_homomorphism(&t, &r, &f).unwrap());
        prop_assert!(all_isomorphisms(&t, &r).unwrap().contains(&perm));
    }
}
