use std::process::Command;

use hfi::ingest_cli::report::Report;
use hfi::ingest_cli::{brieskorn_class, evaluate, ArVerdict, BrieskornParams, EvalOptions, OracleStatus};
use hfi::local_group::LocalClass;
use hfi::monotone::MonotoneRoot;
use hfi::rational::q;

fn hfi(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hfi")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn brieskorn_anchors() {
    for p in [3u64, 5, 7, 9] {
        let r = brieskorn_class(p, 2 * p - 1, 2 * p + 1).unwrap();
        assert_eq!(r.monotone, MonotoneRoot::from_ints(&[(p as i64 - 1, 0)]).unwrap());
        assert_eq!(r.class, LocalClass::y((p as u32 - 1) / 2));
    }
    let r = brieskorn_class(2, 3, 7).unwrap();
    assert_eq!(r.class, LocalClass::new([(1, 1)], q(2)));
    assert_eq!(r.d, q(0));
}

#[test]
fn brieskorn_classes_pass_realizability() {
    for (a, b, c) in [(2, 3, 7), (2, 3, 11), (2, 5, 7), (3, 4, 5), (2, 7, 15), (5, 8, 13), (3, 5, 11), (2, 3, 13)] {
        let r = brieskorn_class(a, b, c).unwrap();
        let check = r.class.realizability_check();
        assert!(check.passes, "Σ({a},{b},{c}) = {}: {:?}", r.class, check.reasons);
        assert_eq!(r.class.d_invariant(), r.d);
    }
}

#[test]
fn brieskorn_plumbings_are_almost_rational() {
    for (a, b, c) in [(2, 3, 5), (2, 3, 7), (5, 8, 13)] {
        let g = BrieskornParams::new(a, b, c).unwrap().plumbing();
        assert!(g.is_negative_definite().unwrap());
        assert_eq!(g.determinant().unwrap().abs(), 1);
        assert!(matches!(g.is_almost_rational(8).unwrap(), ArVerdict::Yes { .. }));
    }
}

#[test]
fn evaluation_is_order_and_form_invariant() {
    let o = EvalOptions::default();
    let a = evaluate("Sigma(5,8,13) + Sigma(2,3,7) - Y(3)", &o).unwrap();
    let b = evaluate("-Y(3) + Sigma(2,3,7) + Sigma(5,8,13)", &o).unwrap();
    let c = evaluate("M(4,0; 2,2) + M(0,-2) - M(6,0)", &o).unwrap();
    let d = evaluate("Y(2) - Y(1) + I[-2] + Y(1) + I[2] - Y(3)", &o).unwrap();
    for r in [&b, &c, &d] {
        assert_eq!((&r.total, r.d, r.d_bar, r.d_under), (&a.total, a.d, a.d_bar, a.d_under));
    }
}

#[test]
fn root_file_atom() {
    let dir = std::env::temp_dir().join(format!("hfi-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = BrieskornParams::new(2, 7, 15).unwrap().h_profile().unwrap().profile().to_text();
    std::fs::write(dir.join("r.root"), text).unwrap();
    let o = EvalOptions { base_dir: Some(dir.clone()), oracle: true, ..Default::default() };
    let a = evaluate("@r.root", &o).unwrap();
    let b = evaluate("Sigma(2,7,15)", &o).unwrap();
    assert_eq!(a.total, b.total);
    assert!(matches!(a.oracle, Some(OracleStatus::Agree { .. })));
    assert!(evaluate("@missing.root", &o).is_err());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cli_eval_json_and_exit_codes() {
    let (code, out, _) = hfi(&["eval", "Sigma(5,8,13)", "--oracle"]);
    assert_eq!(code, 0);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.total, LocalClass::new([(2, 1), (1, -1)], q(-2)));
    assert_eq!((r.d, r.mu_bar), (q(4), q(-1)));
    assert!(matches!(r.oracle, Some(OracleStatus::Agree { .. })));

    let (code, _, err) = hfi(&["eval", "Y(2) +* Y(1)"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 7"), "{err}");

    let (code, out, _) = hfi(&["eval", "Sigma(2,3,5) - Sigma(2,3,5)", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("no obstruction"), "{out}");

    let (code, out, _) = hfi(&["eval", "Y(1)", "--oracle", "--truncation", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"failed\""), "{out}");
}

#[test]
fn cli_root_decompose_plumbing_family() {
    let dir = std::env::temp_dir().join(format!("hfi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let root = dir.join("s.root");
    let (code, _, _) = hfi(&["root", "sigma", "5", "8", "13", "-o", root.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, out, _) = hfi(&["decompose", &format!("@{}", root.display())]);
    assert_eq!(code, 0);
    assert!(out.contains("M(4,0; 2,2)"), "{out}");

    let graph = dir.join("e8.graph");
    let text = BrieskornParams::new(2, 3, 5).unwrap().plumbing().to_text();
    std::fs::write(&graph, text).unwrap();
    let (code, out, _) = hfi(&["plumbing", graph.to_str().unwrap(), "--check", "ar"]);
    assert_eq!(code, 0);
    assert!(out.contains("rational           true"), "{out}");
    assert!(out.contains("almost rational    yes"), "{out}");

    let (code, out, _) = hfi(&["family", "--M", "1", "--N", "1", "--d", "-2", "--mu", "0", "--k", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("(+1*Y[4] -1*Y[3] -1*Y[2])[Δ=0]"), "{out}");
    std::fs::remove_dir_all(dir).unwrap();
}
