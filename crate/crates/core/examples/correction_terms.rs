//! Involutive correction terms from the closed form, checked against the
//! brute-force complex; stabilization under repeated sums; realization families.

use hfi::correction_terms::{asymptotic_check, correction_terms, realization_family, stabilized_terms};
use hfi::local_group::LocalClass;
use hfi::rational::q;

fn main() {
    for c in [
        LocalClass::new([(2, 1), (1, -1)], q(-2)),
        LocalClass::new([(3, 1), (1, -1)], q(0)),
        LocalClass::new([(1, 1), (2, -1)], q(0)),
    ] {
        let closed = correction_terms(&c);
        let oracle = c.oracle_complex().correction_terms().unwrap();
        println!("{c}: closed {closed}, complex {oracle}");
    }

    let a = LocalClass::new([(2, 1), (1, -1)], q(-2));
    for k in 1..=4 {
        println!("{k} copies: {}", stabilized_terms(&a, k));
    }
    let r = asymptotic_check(&a, 20);
    println!("regime {:?}, threshold {:?}, sufficient k = {}", r.regime, r.threshold, r.sufficient);

    for k in 0..3 {
        let f = realization_family(1, 2, 0, 0, k).unwrap();
        println!("family M=1 N=2 d=0 mu=0 k={k}: {f} {}", correction_terms(&f));
    }
}
