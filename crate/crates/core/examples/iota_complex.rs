//! Build a small ι-complex by hand, read off (d, d̄, d̲), and search for local maps.

use hfi::fu_core::{find_local_map, verify_local_map, IotaComplex};
use hfi::rational::q;

fn main() {
    let a = IotaComplex::spherical(q(0), &[4]).unwrap();
    let b = IotaComplex::spherical(q(0), &[2]).unwrap();
    println!("S(0; 4): {} generators, terms {}", a.len(), a.correction_terms().unwrap());
    println!("S(0; 2): {} generators, terms {}", b.len(), b.correction_terms().unwrap());

    let diag = a.validate();
    println!("validate S(0; 4): {}", if diag.ok() { "ok" } else { "failed" });

    let both = a.tensor(&b.dual());
    println!("S(0; 4) ⊗ S(0; 2)^∨: {} generators, terms {}", both.len(), both.correction_terms().unwrap());

    match find_local_map(&a, &b).unwrap() {
        Some(m) => println!("local map S(0; 4) -> S(0; 2) found, verified = {}", verify_local_map(&a, &b, &m).unwrap()),
        None => println!("no local map S(0; 4) -> S(0; 2)"),
    }
    match find_local_map(&b, &a).unwrap() {
        Some(_) => println!("local map S(0; 2) -> S(0; 4) found"),
        None => println!("no local map S(0; 2) -> S(0; 4)"),
    }
}
