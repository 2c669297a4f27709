#![allow(dead_code)]

use hfi::fu_core::IotaComplex;
use hfi::graded_roots::{RootProfile, SymmetricRootProfile};
use hfi::local_group::LocalClass;
use hfi::monotone::{MonotoneRoot, WeaklyMonotoneRoot};
use hfi::rational::q;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

pub fn even_in(rng: &mut StdRng, lo: i64, hi: i64) -> i64 {
    2 * rng.gen_range(lo.div_euclid(2) + (lo.rem_euclid(2) != 0) as i64..=hi.div_euclid(2))
}

/// Symmetric profile with `n <= max_leaves` leaves, even leaf gradings in
/// `[lo, hi]` and angles at most 4 below their neighbouring leaves.
pub fn random_symmetric(rng: &mut StdRng, max_leaves: usize, lo: i64, hi: i64) -> SymmetricRootProfile {
    loop {
        let n = rng.gen_range(1..=max_leaves);
        let left: Vec<i64> = (0..n.div_ceil(2)).map(|_| even_in(rng, lo, hi)).collect();
        let mut leaves = left.clone();
        leaves.extend(left[..n / 2].iter().rev());
        let mut angles = vec![0; n.saturating_sub(1)];
        for i in 0..(n - 1).div_ceil(2) {
            let top = leaves[i].min(leaves[i + 1]);
            let a = top - 2 * rng.gen_range(0..=2);
            angles[i] = a;
            angles[n - 2 - i] = a;
        }
        let p = RootProfile::from_ints(&leaves, &angles);
        if let Ok(s) = SymmetricRootProfile::new(p) {
            return s;
        }
    }
}

fn random_pairs(rng: &mut StdRng, max_type: usize, lo: i64, hi: i64) -> Vec<(i64, i64)> {
    let n = rng.gen_range(1..=max_type);
    let mut h: Vec<i64> = (0..n).map(|_| even_in(rng, lo, hi)).collect();
    let mut r: Vec<i64> = (0..n).map(|_| even_in(rng, lo, hi)).collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    r.sort_unstable();
    h.into_iter().zip(r).collect()
}

pub fn random_monotone(rng: &mut StdRng, max_type: usize, lo: i64, hi: i64) -> MonotoneRoot {
    loop {
        if let Ok(m) = MonotoneRoot::from_ints(&random_pairs(rng, max_type, lo, hi)) {
            return m;
        }
    }
}

pub fn random_weak(rng: &mut StdRng, max_type: usize, lo: i64, hi: i64) -> WeaklyMonotoneRoot {
    loop {
        if let Ok(m) = WeaklyMonotoneRoot::from_ints(&random_pairs(rng, max_type, lo, hi)) {
            return m;
        }
    }
}

pub fn random_class(rng: &mut StdRng, max_index: u32, max_coeff: i64, shift_range: i64) -> LocalClass {
    let terms: Vec<(u32, i64)> =
        (0..rng.gen_range(0..=3)).map(|_| (rng.gen_range(1..=max_index), rng.gen_range(-max_coeff..=max_coeff))).collect();
    LocalClass::new(terms, q(2 * rng.gen_range(-shift_range..=shift_range)))
}

/// Standard complex of `M(2i, 0)`, dualized when `sign < 0`.
pub fn y_complex(i: u32, sign: i64) -> IotaComplex {
    let h = 2 * i as i64;
    let c = SymmetricRootProfile::from_ints(&[h, h], &[0]).unwrap().standard_complex();
    if sign < 0 {
        c.dual()
    } else {
        c
    }
}

/// A tensor of up to three small pieces: standard complexes of random roots,
/// their duals, and a shifted tower.
pub fn random_complex(rng: &mut StdRng) -> IotaComplex {
    let mut c = IotaComplex::tower(q(even_in(rng, -4, 4)));
    for _ in 0..rng.gen_range(1..=2) {
        let piece = random_symmetric(rng, 3, -6, 2).standard_complex();
        c = c.tensor(&if rng.gen_bool(0.5) { piece.dual() } else { piece });
    }
    c
}

pub fn class_strategy() -> impl Strategy<Value = LocalClass> {
    (prop::collection::vec((1u32..=6, -2i64..=2), 0..4), -4i64..=4)
        .prop_map(|(terms, s)| LocalClass::new(terms, q(2 * s)))
}
