//! A symmetric graded root given by leaf and angle gradings: axioms, tree,
//! standard complex, and its homology against the root's own module.

use hfi::graded_roots::SymmetricRootProfile;
use hfi::rational::{fmt_q, q};

fn main() {
    let root = SymmetricRootProfile::from_ints(&[-8, -4, -2, -2, -4, -8], &[-10, -6, -6, -6, -10]).unwrap();
    println!("{root}");
    println!("axioms: {}", if root.profile().validate().ok() { "pass" } else { "fail" });

    let tree = root.profile().reconstruct_tree().unwrap();
    for v in tree.at(q(-6)) {
        println!("vertex at -6 over leaves {:?}", v.leaves);
    }
    for i in 1..=3 {
        println!("mirror merge of leaf {i}: {}", fmt_q(&root.mirror_merge(i).unwrap()));
    }

    let c = root.standard_complex();
    println!("standard complex: {} generators", c.len());
    let from_tree = root.profile().h_minus_ranks(q(-12), q(-2)).unwrap();
    let from_complex = c.homology_ranks(q(-12), q(-2)).unwrap();
    for (g, r) in &from_tree {
        println!("grading {:>4}: tree {r}, complex {}", fmt_q(g), from_complex[g]);
    }
    println!("terms {}", c.correction_terms().unwrap());
}
