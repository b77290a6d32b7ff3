use biquandle_core::{
    alexander_table, build_diagram, count_homs, count_homs_with, crossing_outputs, enumerate_biquandles,
    make_switch_biquandle, BiquandleTable, Diagram, ElementOrder, FiniteModule, GaussCode, Mat, ModuleElement,
    Passage, Sign, Token,
};
use proptest::prelude::*;

fn klein_target() -> BiquandleTable {
    let a = Mat::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
    let b = Mat::from_rows(2, &[vec![1, 1], vec![0, 1]]).unwrap();
    let shift = ModuleElement { coords: vec![1, 1] };
    make_switch_biquandle(2, 2, &a, &b, &shift, ElementOrder::Residue).unwrap().table
}

fn targets() -> Vec<BiquandleTable> {
    let mut out = vec![klein_target(), BiquandleTable::trivial(3).unwrap()];
    out.extend(enumerate_biquandles(3, false).unwrap().tables.into_iter().step_by(5));
    for (m, s, t) in [(3, 2, 1), (5, 2, 3), (7, 3, 5), (4, 3, 1), (5, 1, 2)] {
        out.push(alexander_table(&FiniteModule::scalar(m, s, t).unwrap(), ElementOrder::Canonical));
    }
    out
}

fn naive_count(d: &Diagram, t: &BiquandleTable) -> u64 {
    let n = t.order();
    let arcs = d.semi_arcs;
    let mut count = 0;
    let mut vals = vec![0usize; arcs];
    'outer: loop {
        let ok = d.crossings.iter().all(|c| {
            crossing_outputs(t, c.sign, vals[c.under_in], vals[c.over_in]) == (vals[c.under_out], vals[c.over_out])
        });
        count += ok as u64;
        for v in vals.iter_mut() {
            *v += 1;
            if *v < n {
                continue 'outer;
            }
            *v = 0;
        }
        return count;
    }
}

/// A random valid code with `c` crossings: a shuffled token list.
fn code_strategy(max_crossings: u32) -> impl Strategy<Value = GaussCode> {
    (0..=max_crossings).prop_flat_map(|c| {
        (
            Just((0..2 * c).collect::<Vec<u32>>()).prop_shuffle(),
            prop::collection::vec(any::<(bool, bool)>(), c as usize),
        )
            .prop_map(|(slots, choices)| {
                let tokens = slots
                    .iter()
                    .map(|&slot| {
                        let label = slot / 2;
                        let (over_first, positive) = choices[label as usize];
                        let over = (slot % 2 == 0) == over_first;
                        Token {
                            passage: if over { Passage::Over } else { Passage::Under },
                            label: label + 1,
                            sign: if positive { Sign::Positive } else { Sign::Negative },
                        }
                    })
                    .collect();
                GaussCode::new(tokens).unwrap()
            })
    })
}

fn count(code: &GaussCode, t: &BiquandleTable) -> u64 {
    count_homs(&build_diagram(code), t).unwrap().count
}

#[test]
fn small_codes() {
    let t = klein_target();
    assert_eq!(count(&GaussCode::unknot(), &t), 4);
    assert_eq!(count(&"O1+,U1+".parse().unwrap(), &t), 4);
    let d = build_diagram(&"O1+,U2-,O3+,U1+,O2-,U4+,O4+,U3+".parse().unwrap());
    assert_eq!(d.semi_arcs, 8);
    assert_eq!(d.crossings.len(), 4);
}

#[test]
fn every_semi_arc_enters_and_leaves_once() {
    let code = GaussCode::from_braid(3, &[1, -2, 1, -2]).unwrap();
    let d = build_diagram(&code);
    let mut ins = vec![0; d.semi_arcs];
    let mut outs = vec![0; d.semi_arcs];
    for c in &d.crossings {
        ins[c.under_in] += 1;
        ins[c.over_in] += 1;
        outs[c.under_out] += 1;
        outs[c.over_out] += 1;
    }
    assert!(ins.iter().chain(&outs).all(|&k| k == 1));
}

#[test]
fn assignments_are_kept_on_request() {
    let t = klein_target();
    let r = count_homs_with(&build_diagram(&"O1-,U1-".parse().unwrap()), &t, true).unwrap();
    let kept = r.assignments.unwrap();
    assert_eq!(kept.len() as u64, r.count);
    assert_eq!(r.count, 4);
    assert!(kept.iter().all(|a| a.len() == 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn propagation_matches_naive_count(code in code_strategy(3), which in 0usize..64) {
        let ts = targets();
        let t = &ts[which % ts.len()];
        let d = build_diagram(&code);
        prop_assume!(t.order().pow(d.semi_arcs as u32) <= 1 << 18);
        prop_assert_eq!(count_homs(&d, t).unwrap().count, naive_count(&d, t));
    }

    #[test]
    fn trivial_target_counts_the_order(code in code_strategy(5), n in 1usize..5) {
        prop_assert_eq!(count(&code, &BiquandleTable::trivial(n).unwrap()), n as u64);
    }

    #[test]
    fn rotation_does_not_change_counts(code in code_strategy(5), k in 0usize..10) {
        for t in targets() {
            prop_assert_eq!(count(&code, &t), count(&code.rotated(k), &t));
        }
    }

    #[test]
    fn kinks_do_not_change_counts(
        code in code_strategy(4),
        pos in 0usize..10,
        over_first: bool,
        positive: bool,
    ) {
        let first = if over_first { Passage::Over } else { Passage::Under };
        let sign = if positive { Sign::Positive } else { Sign::Negative };
        let moved = code.with_kink(pos, first, sign);
        for t in targets() {
            prop_assert_eq!(count(&code, &t), count(&moved, &t));
        }
    }

    #[test]
    fn bigons_do_not_change_counts(
        code in code_strategy(4),
        p in 0usize..10,
        q in 0usize..10,
        same_direction: bool,
        positive: bool,
    ) {
        let sign = if positive { Sign::Positive } else { Sign::Negative };
        let moved = code.with_bigon(p, q, same_direction, sign);
        for t in targets() {
            prop_assert_eq!(count(&code, &t), count(&moved, &t));
        }
    }
}
