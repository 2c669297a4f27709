//! Expressions over Brieskorn spheres, monotone roots and basis elements,
//! evaluated into a report with the oracle cross-check.

use hfi::ingest_cli::{evaluate, EvalOptions};

fn main() {
    let opts = EvalOptions { oracle: true, ..Default::default() };
    for e in ["Sigma(5,8,13)", "Y(2) - Y(1) + I[-2]", "Sigma(2,3,5) - Sigma(2,3,5)", "2*Sigma(2,3,7) - M(4,0; 2,2)"] {
        match evaluate(e, &opts) {
            Ok(r) => println!("{}", r.to_text()),
            Err(err) => println!("{e}: {err}"),
        }
    }
    let r = evaluate("Sigma(13,21,34)", &EvalOptions::default()).unwrap();
    println!("{}", r.to_json_string());
    if let Err(e) = evaluate("Y(1) + Sigma(2,4,5)", &opts) {
        println!("{e}");
    }
}
