mod common;

use common::{dims_of, naive_homology};
use khcausal::cube::build_kh_complex;
use khcausal::invariants::{akh, chain_euler, graded_euler, kh, kh_unreduced, GradedDims, LaurentPolynomial};
use khcausal::linkdiag::{
    augment_with_meridian, braid_closure, model_link, parse_braid, parse_pd, ModelLink, ModelName,
    PlanarDiagram,
};
use proptest::prelude::*;

fn closure(word: &str, m: usize) -> PlanarDiagram {
    braid_closure(&parse_braid(word, m).unwrap()).planarize()
}

#[test]
fn unknot_and_hopf_match_brute_force() {
    for d in [
        model_link(ModelName::Unknot).planar(),
        model_link(ModelName::HopfPositive).planar(),
        model_link(ModelName::HopfNegative).planar(),
        parse_pd("X(1,1,2,2)").unwrap(),
        parse_pd("O(1) O(2)").unwrap(),
    ] {
        assert_eq!(dims_of(&kh(&d, 20).unwrap()), naive_homology(&d, false), "{}", d.to_pd_text());
    }
}

#[test]
fn hopf_values() {
    let pos = kh(&model_link(ModelName::HopfPositive).planar(), 20).unwrap();
    let want = GradedDims::bigraded(&[((0, 0), 1), ((0, 2), 1), ((2, 4), 1), ((2, 6), 1)]);
    assert_eq!(pos, want);
    let neg = kh(&model_link(ModelName::HopfNegative).planar(), 20).unwrap();
    assert_eq!(neg, want.mirrored());
    // this PD code is the positive Hopf link
    assert_eq!(kh(&parse_pd("X(1,3,2,4) X(3,1,4,2)").unwrap(), 20).unwrap(), want);
}

#[test]
fn hopf_chain_dimensions() {
    let c = build_kh_complex(&model_link(ModelName::HopfPositive).planar(), 20).unwrap();
    assert_eq!(c.total_generators(), 12);
    let by_degree: Vec<usize> = c.dims_by_degree().into_values().collect();
    assert_eq!(by_degree, vec![4, 4, 4]);
}

#[test]
fn p3_total_dimension_and_euler() {
    let p3 = model_link(ModelName::P3).planar();
    assert_eq!(p3.crossing_count(), 4);
    let g = kh(&p3, 20).unwrap();
    assert_eq!(dims_of(&g), naive_homology(&p3, false));
    assert_eq!(g.total_dimension(), 8);
    assert_eq!(graded_euler(&g), chain_euler(&p3, 20).unwrap());
}

#[test]
fn trefoil_jones() {
    // unnormalized Jones polynomial of the right-handed trefoil
    let g = kh(&closure("1 1 1", 2), 20).unwrap();
    assert_eq!(graded_euler(&g), LaurentPolynomial::from_terms(&[(1, 1), (3, 1), (5, 1), (9, -1)]));
    assert_eq!(g.total_dimension(), 6);
}

#[test]
fn kink_is_unknot() {
    let unknot = kh(&model_link(ModelName::Unknot).planar(), 20).unwrap();
    for pd in ["X(1,1,2,2)", "X(2,1,1,2)", "X(1,2,2,1)"] {
        let d = parse_pd(pd).unwrap();
        assert_eq!(kh(&d, 20).unwrap(), unknot, "{pd}");
    }
}

#[test]
fn augmented_single_strand_is_hopf() {
    let one = braid_closure(&parse_braid("", 1).unwrap());
    let aug = augment_with_meridian(&one);
    assert_eq!(aug.crossing_count(), 2);
    assert_eq!(kh(&aug, 20).unwrap(), kh(&model_link(ModelName::HopfPositive).planar(), 20).unwrap());
}

#[test]
fn annular_u2_and_friends() {
    let ModelLink::Annular(u2) = model_link(ModelName::U2) else {
        panic!("U2 is annular")
    };
    let u2_dims = akh(&u2, 20).unwrap();
    assert_eq!(
        u2_dims,
        GradedDims::trigraded(&[((0, 2, 2), 1), ((0, 0, 0), 2), ((0, -2, -2), 1)])
    );
    let cancel = braid_closure(&parse_braid("1 -1", 2).unwrap());
    assert_eq!(akh(&cancel, 20).unwrap(), u2_dims);
    let twisted = braid_closure(&parse_braid("-1 -1", 2).unwrap());
    assert_ne!(akh(&twisted, 20).unwrap(), u2_dims);
}

#[test]
fn annular_matches_brute_force() {
    for (w, m) in [("", 2), ("1", 2), ("1 -1", 2), ("-1 -1", 2), ("1 1 1", 2), ("1 2", 3), ("1 -2 1", 3), ("", 1)] {
        let a = braid_closure(&parse_braid(w, m).unwrap());
        let got = dims_of(&akh(&a, 20).unwrap());
        assert_eq!(got, naive_homology(&a.planarize(), true), "[{w}]/{m}");
    }
}

#[test]
fn annular_forgets_to_khovanov_euler() {
    // setting the k grading aside does not change the Euler characteristic
    for (w, m) in [("1 1", 2), ("1 -2 1 -2", 3), ("1 1 1", 2)] {
        let a = braid_closure(&parse_braid(w, m).unwrap());
        let e = graded_euler(&akh(&a, 20).unwrap().marginalize_k());
        assert_eq!(e, chain_euler(&a.planarize(), 20).unwrap());
    }
}

fn small_braid() -> impl Strategy<Value = (Vec<i32>, usize)> {
    (2usize..=3).prop_flat_map(|m| {
        let letter = (1..m as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        (prop::collection::vec(letter, 0..=5), Just(m))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kh_matches_brute_force((letters, m) in small_braid()) {
        let a = braid_closure(&khcausal::linkdiag::BraidWord::new(m, letters).unwrap());
        let d = a.planarize();
        let naive = naive_homology(&d, false);
        prop_assert_eq!(dims_of(&kh(&d, 20).unwrap()), naive.clone());
        prop_assert_eq!(dims_of(&kh_unreduced(&d, 20).unwrap()), naive);
        prop_assert_eq!(dims_of(&akh(&a, 20).unwrap()), naive_homology(&d, true));
    }

    #[test]
    fn euler_consistency((letters, m) in small_braid()) {
        let d = braid_closure(&khcausal::linkdiag::BraidWord::new(m, letters).unwrap()).planarize();
        prop_assert_eq!(graded_euler(&kh(&d, 20).unwrap()), chain_euler(&d, 20).unwrap());
    }

    #[test]
    fn mirror_flips_gradings((letters, m) in small_braid()) {
        let inv: Vec<i32> = letters.iter().map(|g| -g).collect();
        let d = braid_closure(&khcausal::linkdiag::BraidWord::new(m, letters).unwrap()).planarize();
        let e = braid_closure(&khcausal::linkdiag::BraidWord::new(m, inv).unwrap()).planarize();
        prop_assert_eq!(kh(&e, 20).unwrap(), kh(&d, 20).unwrap().mirrored());
    }

    #[test]
    fn total_dimension_at_least_two_to_components((letters, m) in small_braid()) {
        let d = braid_closure(&khcausal::linkdiag::BraidWord::new(m, letters).unwrap()).planarize();
        let g = kh(&d, 20).unwrap();
        prop_assert!(g.total_dimension() >= 1 << d.component_count());
        prop_assert_eq!(g.total_dimension() % 2, 0);
    }

    #[test]
    fn crossing_order_is_irrelevant((letters, m) in small_braid(), seed in any::<u64>()) {
        let d = braid_closure(&khcausal::linkdiag::BraidWord::new(m, letters).unwrap()).planarize();
        let mut order: Vec<usize> = (0..d.crossing_count()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = d.permute_crossings(&order);
        prop_assert_eq!(kh(&p, 20).unwrap(), kh(&d, 20).unwrap());
    }
}
