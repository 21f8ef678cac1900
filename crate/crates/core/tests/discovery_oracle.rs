mod common;

use std::collections::BTreeSet;

use common::gen;
use common::oracle::{self, brute_force_mtps, brute_force_translators, rows, GuardViolation};
use proptest::prelude::*;
use siatec::{compute_mtps, compute_tecs, PointSet};

fn fast_mtps(d: &PointSet) -> Vec<(Vec<i64>, Vec<Vec<i64>>)> {
    compute_mtps(d)
        .into_iter()
        .map(|e| (e.vector.coords().to_vec(), rows(&e.pattern)))
        .collect()
}

#[test]
fn oracle_small_cases() {
    let single = PointSet::from_coords([[5]]).unwrap();
    assert!(brute_force_mtps(&single).unwrap().is_empty());
    let pair = PointSet::from_coords([[0], [3]]).unwrap();
    assert_eq!(
        brute_force_mtps(&pair).unwrap(),
        vec![(vec![3], vec![vec![0]])]
    );
    let big = PointSet::from_coords((0..31).map(|i| vec![i])).unwrap();
    assert_eq!(
        brute_force_mtps(&big),
        Err(GuardViolation("dataset too large for the MTP oracle"))
    );
}

#[test]
fn worked_examples_match_oracle() {
    let line = PointSet::from_coords([[0], [1], [2]]).unwrap();
    let expected = brute_force_mtps(&line).unwrap();
    assert_eq!(
        expected,
        vec![(vec![1], vec![vec![0], vec![1]]), (vec![2], vec![vec![0]])]
    );
    assert_eq!(fast_mtps(&line), expected);

    let diagonal = PointSet::from_coords((1..=7).map(|i| vec![i, i])).unwrap();
    let expected = brute_force_mtps(&diagonal).unwrap();
    assert_eq!(
        expected[0].1,
        (1..=6).map(|i| vec![i, i]).collect::<Vec<_>>()
    );
    assert_eq!(fast_mtps(&diagonal), expected);
}

#[test]
fn hundred_random_datasets_match_oracle() {
    let mut rng = gen::rng(2024);
    for case in 0..100 {
        let dim = 1 + case % 3;
        let d = gen::dataset(&mut rng, dim, 25, 4);
        assert_eq!(
            fast_mtps(&d),
            brute_force_mtps(&d).unwrap(),
            "case {case}: {d:?}"
        );
    }
}

fn arb_dataset() -> impl Strategy<Value = PointSet> {
    (1usize..=3).prop_flat_map(|dim| {
        prop::collection::vec(prop::collection::vec(-5i64..=5, dim), 1..=20)
            .prop_map(|rows| PointSet::from_coords(rows).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mtps_are_maximal(d in arb_dataset()) {
        for e in compute_mtps(&d) {
            prop_assert!(!e.vector.is_zero());
            prop_assert!(!e.pattern.is_empty());
            for p in &d {
                let image = p + &e.vector;
                prop_assert_eq!(e.pattern.contains(p), d.contains(&image));
            }
        }
    }

    #[test]
    fn tecs_have_complete_translator_sets(d in arb_dataset()) {
        let tecs = compute_tecs(&d);
        let mut patterns = BTreeSet::new();
        for t in &tecs {
            let pattern = t.pattern_points().into_owned();
            prop_assert!(patterns.insert(pattern.clone()), "duplicate pattern");
            prop_assert!(t.covered_set().is_subset(&d).unwrap());
            let expected = brute_force_translators(&rows(&pattern), &d);
            let got: BTreeSet<Vec<i64>> = t.translators().iter().map(|v| v.coords().to_vec()).collect();
            prop_assert_eq!(got, expected);
        }
        let mtp_patterns: BTreeSet<Vec<Vec<i64>>> = oracle::brute_force_mtps(&d).unwrap().into_iter().map(|(_, p)| p).collect();
        let tec_patterns: BTreeSet<Vec<Vec<i64>>> = patterns.iter().map(rows).collect();
        prop_assert_eq!(mtp_patterns, tec_patterns);
    }
}
