//! Intersection lattice of a plumbing tree and the rationality tests.

use hfi::ingest_cli::{BrieskornParams, PlumbingGraph, DEFAULT_AR_BOUND};

fn describe(name: &str, g: &PlumbingGraph) {
    println!("{name}: {} vertices, K = {:?}", g.len(), g.canonical_k());
    println!("  negative definite {}, det {}", g.is_negative_definite().unwrap(), g.determinant().unwrap());
    println!("  K^2 = {}", g.k_squared().unwrap());
    println!("  rational {}", g.is_rational().unwrap());
    println!("  almost rational {}", g.is_almost_rational(DEFAULT_AR_BOUND).unwrap());
}

fn main() {
    let text = "\
vertex c -1
vertex a -2
vertex b -3
vertex d -7
edge c a
edge c b
edge c d
";
    describe("star (-1; -2, -3, -7)", &PlumbingGraph::parse(text).unwrap());
    describe("Sigma(2,3,5)", &BrieskornParams::new(2, 3, 5).unwrap().plumbing());
    describe("Sigma(5,8,13)", &BrieskornParams::new(5, 8, 13).unwrap().plumbing());
}
