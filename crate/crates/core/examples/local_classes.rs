//! Arithmetic in the Y basis and the invariants read off a class.

use hfi::local_group::LocalClass;
use hfi::rational::{fmt_q, q};

fn main() {
    let a = LocalClass::new([(2, 1), (1, -1)], q(-2));
    let b = LocalClass::new([(6, 1), (4, 1), (5, -1)], q(-2));
    for c in [a.clone(), b.clone(), a.clone() + b.clone(), a.clone() - a.clone(), LocalClass::new([(2, 1), (1, 1)], q(0))] {
        let r = c.realizability_check();
        println!(
            "{c}: d = {}, mu_bar = {}, rokhlin = {:?}, {}, realizable: {}",
            fmt_q(&c.d_invariant()),
            fmt_q(&c.mu_bar()),
            c.rokhlin().ok(),
            c.infinite_order_verdict(),
            if r.passes { "conditions hold".to_string() } else { r.reasons.join("; ") }
        );
    }
    let s = LocalClass::new([(2, 1), (1, 1)], q(0)).spherical_params().unwrap();
    println!("spherical parameters of Y2 + Y1: d = {}, deltas {:?}", fmt_q(&s.d), s.deltas);
    println!("json {}", a.to_json());
}
