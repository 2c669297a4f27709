//! Graded roots of Brieskorn spheres from the semigroup walk, and their classes.

use hfi::ingest_cli::BrieskornParams;
use hfi::rational::fmt_q;

fn main() {
    for (a, b, c) in [(2, 3, 5), (2, 3, 7), (2, 7, 15), (3, 5, 7), (5, 8, 13), (13, 21, 34)] {
        let p = BrieskornParams::new(a, b, c).unwrap();
        let s = p.seifert();
        let r = p.root().unwrap();
        println!(
            "{p}: e0 = {}, fibers {:?}, d = {}, {} leaves, monotone {}, class {}",
            s.e0,
            s.fibers,
            fmt_q(&r.d),
            r.profile.len(),
            r.monotone,
            r.class
        );
    }
    let p = BrieskornParams::new(2, 7, 15).unwrap();
    print!("{}", p.hf_minus_profile().unwrap().profile().to_text());
}
