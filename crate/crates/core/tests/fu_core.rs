use hfi::fu_core::{find_local_map, locally_equivalent, verify_local_map, ComplexError, ConeGen, IotaComplex, Matrix, UPoly};
use hfi::rational::q;
use proptest::prelude::*;

fn terms(c: &IotaComplex) -> (i64, i64, i64) {
    let t = c.correction_terms().unwrap();
    (t.d.to_integer(), t.d_bar.to_integer(), t.d_under.to_integer())
}

fn s(d: i64, deltas: &[i64]) -> IotaComplex {
    IotaComplex::spherical(q(d), deltas).unwrap()
}

#[test]
fn trivial_terms() {
    let t = IotaComplex::trivial();
    assert!(t.validate().ok());
    assert_eq!(terms(&t), (0, 0, 0));
}

#[test]
fn one_cell_sphere_and_its_dual() {
    let c = s(2, &[2]);
    assert!(c.validate().ok(), "{}", c.validate());
    assert_eq!(terms(&c), (2, 2, 0));
    assert_eq!(terms(&c.dual()), (-2, 0, -2));
}

#[test]
fn tower_shift() {
    assert_eq!(terms(&IotaComplex::tower(q(-6))), (-6, -6, -6));
}

#[test]
fn wrong_exponent_is_a_degree_failure() {
    let mut c = s(2, &[2]);
    let key = *c.differential.keys().next().unwrap();
    c.differential.insert(key, UPoly::monomial(2));
    let diag = c.validate();
    assert_eq!(diag.passed("degree_d"), Some(false));
    assert!(c.correction_terms().is_err());
}

#[test]
fn nonzero_d_squared_is_reported() {
    let mut d = Matrix::new();
    d.insert((1, 0), UPoly::one());
    d.insert((2, 1), UPoly::one());
    let mut iota = Matrix::new();
    for i in 0..3 {
        iota.insert((i, i), UPoly::one());
    }
    let c = IotaComplex::new(vec!["a".into(), "b".into(), "c".into()], vec![q(2), q(1), q(0)], d, iota);
    assert_eq!(c.validate().passed("d_squared"), Some(false));
}

#[test]
fn iota_squared_needs_a_homotopy() {
    // x, y, b in grading 0; a, c in grading 1; ∂a = b, ∂c = x + y.
    // ι: x -> y, y -> x + b, c -> c + a. Then ι² + id = ∂H + H∂ with H(x) = H(y) = a.
    let (x, y, b, a, c) = (0, 1, 2, 3, 4);
    let one = UPoly::one;
    let mut d = Matrix::new();
    d.insert((b, a), one());
    d.insert((x, c), one());
    d.insert((y, c), one());
    let mut iota = Matrix::new();
    iota.insert((y, x), one());
    iota.insert((x, y), one());
    iota.insert((b, y), one());
    iota.insert((a, a), one());
    iota.insert((b, b), one());
    iota.insert((c, c), one());
    iota.insert((a, c), one());
    let labels = ["x", "y", "b", "a", "c"].map(String::from).to_vec();
    let cx = IotaComplex::new(labels, vec![q(0), q(0), q(0), q(1), q(1)], d, iota);
    let diag = cx.validate();
    assert!(diag.ok(), "{diag}");
    assert_eq!(terms(&cx), (0, 0, 0));
    // y -> b alone: ι²(x) = b, and x + b is not a boundary
    let mut broken = cx.clone();
    broken.iota.remove(&(x, y));
    assert_eq!(broken.validate().passed("iota_squared_homotopic"), Some(false));
}

#[test]
fn two_towers_rejected() {
    let mut iota = Matrix::new();
    iota.insert((0, 0), UPoly::one());
    iota.insert((1, 1), UPoly::one());
    let c = IotaComplex::new(vec!["a".into(), "b".into()], vec![q(0), q(0)], Matrix::new(), iota);
    assert_eq!(c.validate().passed("single_tower"), Some(false));
}

#[test]
fn tensor_unit_and_commutativity() {
    let a = s(0, &[2, 4]);
    let b = s(2, &[2]);
    assert!(a.tensor(&IotaComplex::trivial()).same_structure(&a));
    let ab = a.tensor(&b);
    let ba = b.tensor(&a);
    let (na, nb) = (a.len(), b.len());
    let perm: Vec<usize> = (0..na * nb).map(|x| (x % nb) * na + x / nb).collect();
    assert!(ab.permuted(&perm).same_structure(&ba));
    assert_eq!(terms(&ab), terms(&ba));
}

#[test]
fn double_dual() {
    let c = s(0, &[2, 2, 4]);
    assert!(c.dual().dual().same_structure(&c));
}

#[test]
fn spherical_dual_matches_explicit_cells() {
    let deltas = [2, 4, 2];
    let c = s(4, &deltas).dual();
    let n = deltas.len();
    let idx = |i: usize, j: bool| if i == n { 2 * n } else { 2 * i + j as usize };
    let mut want = Matrix::new();
    for i in 1..=n {
        let e = UPoly::monomial((deltas[i - 1] / 2) as u32);
        let cells: &[bool] = if i == n { &[false] } else { &[false, true] };
        for &src in &[false, true] {
            for &j in cells {
                want.insert((idx(i, j), idx(i - 1, src)), e.clone());
            }
        }
    }
    assert_eq!(c.differential, want);
    let mut sum = 0;
    for i in 0..=n {
        if i > 0 {
            sum += deltas[i - 1];
        }
        assert_eq!(c.gradings[idx(i, false)], q(sum - 4 - i as i64));
    }
    assert!(c.validate().ok());
}

#[test]
fn cone_representatives() {
    let c = s(2, &[2]);
    let cone = c.mapping_cone().unwrap();
    assert!(cone.squares_to_zero());
    // Q·e0 carries d̄, U·e0 + Q·e1 carries d̲ + 1.
    let top = cone.homogenize(&[ConeGen::with_q(0)]).unwrap();
    assert!(cone.is_cycle(&top) && cone.is_nontorsion(&top).unwrap());
    assert_eq!(top.grading, q(2));
    let low = cone.homogenize(&[ConeGen::plain(0), ConeGen::with_q(2)]).unwrap();
    assert_eq!(low.grading, q(1));
    assert!(cone.is_cycle(&low) && cone.is_nontorsion(&low).unwrap());
    let sum = cone.homogenize(&[ConeGen::plain(0), ConeGen::plain(1)]).unwrap();
    assert!(cone.is_cycle(&sum) && !cone.is_nontorsion(&sum).unwrap());
}

#[test]
fn homology_window_and_refusal() {
    let c = s(2, &[2]);
    let r = c.homology_ranks(q(-4), q(2)).unwrap();
    assert_eq!(r[&q(2)], 2);
    assert_eq!(r[&q(1)], 0);
    assert_eq!(r[&q(0)], 1);
    assert!(matches!(c.homology_ranks(q(-40), q(0)), Err(ComplexError::Window { .. })));
}

#[test]
fn low_truncation_is_unstable() {
    let c = s(0, &[4]).with_truncation(1);
    assert!(matches!(c.correction_terms(), Err(ComplexError::Unstable { .. })));
}

#[test]
fn local_maps_between_one_cell_spheres() {
    let big = s(0, &[4]);
    let small = s(0, &[2]);
    let m = find_local_map(&big, &small).unwrap().expect("map exists");
    assert!(verify_local_map(&big, &small, &m).unwrap());
    assert!(find_local_map(&small, &big).unwrap().is_none());
    assert!(!locally_equivalent(&big, &small).unwrap());
}

#[test]
fn coset_mismatch() {
    let a = IotaComplex::tower(q(0));
    let b = IotaComplex::tower(hfi::rational::parse_q("1/2").unwrap());
    assert!(matches!(find_local_map(&a, &b), Err(ComplexError::CosetMismatch(..))));
}

#[test]
fn json_round_trip() {
    let c = s(2, &[2, 4]);
    let back = IotaComplex::from_json(&c.to_json()).unwrap();
    assert_eq!(back, c);
}

fn sphere() -> impl Strategy<Value = IotaComplex> {
    (-2i64..=2, proptest::collection::vec(prop_oneof![Just(0i64), Just(2), Just(4)], 0..3))
        .prop_map(|(d, ds)| s(2 * d, &ds))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn terms_are_ordered_and_dualize(a in sphere(), b in sphere()) {
        let c = a.tensor(&b);
        prop_assert!(c.validate().ok());
        let (d, hi, lo) = terms(&c);
        prop_assert!(lo <= d && d <= hi);
        prop_assert_eq!(terms(&c.dual()), (-d, -lo, -hi));
    }

    #[test]
    fn self_inverse_up_to_local_equivalence(a in sphere()) {
        prop_assert!(locally_equivalent(&a, &a).unwrap());
        let z = a.tensor(&a.dual());
        prop_assert!(locally_equivalent(&z, &IotaComplex::trivial()).unwrap());
    }
}
