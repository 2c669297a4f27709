mod common;

use hfi::graded_roots::{RootError, RootProfile, SymmetricRootProfile};
use hfi::rational::q;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn six_leaf() -> SymmetricRootProfile {
    SymmetricRootProfile::from_ints(&[-8, -4, -2, -2, -4, -8], &[-10, -6, -6, -6, -10]).unwrap()
}

#[test]
fn validation_examples() {
    assert!(RootProfile::from_ints(&[0, 0], &[-2]).validate().ok());
    assert!(!RootProfile::from_ints(&[0, 0], &[2]).validate().ok());
    assert!(six_leaf().profile().validate().ok());
    assert!(matches!(SymmetricRootProfile::from_ints(&[0, 2], &[-2]), Err(RootError::Invalid(_))));
}

#[test]
fn trivial_root_complex() {
    let c = SymmetricRootProfile::from_ints(&[0, 0], &[-2]).unwrap().standard_complex();
    assert_eq!(c.len(), 3);
    assert_eq!(c.gradings, vec![q(0), q(0), q(-1)]);
    assert!(c.validate().ok());
}

#[test]
fn six_leaf_tree_and_merges() {
    let p = six_leaf();
    assert_eq!(p.profile().merge_grading(1, 6), q(-10));
    let tree = p.profile().reconstruct_tree().unwrap();
    let at6: Vec<_> = tree.at(q(-6)).collect();
    assert_eq!(at6.len(), 1);
    let v = tree.vertices.iter().position(|v| v.grading == q(-6)).unwrap();
    assert_eq!(tree.children(v).count(), 4);
    assert_eq!(p.mirror_merge(1).unwrap(), q(-10));
    assert_eq!(p.mirror_merge(3).unwrap(), q(-6));
    assert!(p.mirror_merge(4).is_err());
    let c = p.standard_complex();
    assert_eq!(c.len(), 11);
    let ranks = c.homology_ranks(q(-8), q(-2)).unwrap();
    assert_eq!(ranks[&q(-2)], 2);
    assert_eq!(ranks[&q(-4)], 4);
}

#[test]
fn single_leaf_is_a_tower() {
    let p = SymmetricRootProfile::from_ints(&[4], &[]).unwrap();
    let t = p.standard_complex().correction_terms().unwrap();
    assert_eq!((t.d, t.d_bar, t.d_under), (q(4), q(4), q(4)));
}

#[test]
fn text_round_trip_with_convention() {
    let p = six_leaf();
    assert_eq!(RootProfile::from_text(&p.profile().to_text()).unwrap(), *p.profile());
    let hf = "# comment\nconvention: hf-minus\nleaves: -8 -4 -2 -2 -4 -8\nangles: -10 -6 -6 -6 -10\n";
    assert_eq!(RootProfile::from_text(hf).unwrap(), p.profile().shifted(q(2)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn homology_of_standard_complex_matches_tree(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = common::random_symmetric(&mut rng, 7, -10, 4);
        let c = p.standard_complex();
        prop_assert!(c.validate().ok());
        let lo = p.profile().bottom() - q(4);
        let hi = p.profile().top();
        let a = p.profile().h_minus_ranks(lo, hi).unwrap();
        let b = c.homology_ranks(lo, hi).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = common::random_symmetric(&mut rng, 8, -12, 4);
        prop_assert_eq!(RootProfile::from_text(&p.profile().to_text()).unwrap(), p.profile().clone());
    }
}
