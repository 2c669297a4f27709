//! Evaluation of an expression into a [`Report`], with the optional oracle
//! cross-check on the tensor product of the per-term complexes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::brieskorn::BrieskornError;
use super::expr::{parse_expr, Atom, Expr, ParseError};
use crate::correction_terms::correction_terms;
use crate::fu_core::{ComplexJson, IotaComplex, Terms};
use crate::graded_roots::{RootError, RootProfile, SymmetricRootProfile};
use crate::local_group::{LocalClass, OrderVerdict, Realizability};
use crate::monotone::MonotoneRoot;
use crate::rational::{fmt_q, q, Q};

/// Default cap on the number of generators of the oracle complex.
pub const DEFAULT_ORACLE_LIMIT: usize = 250;

/// Per-term complexes from a full root profile are used up to this size;
/// larger roots fall back to their monotone subroot.
const FULL_PROFILE_LIMIT: usize = 16;

/// Profiles with more leaves are left out of the report.
const REPORT_PROFILE_LIMIT: usize = 32;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Brieskorn(#[from] BrieskornError),
    #[error("{path}: {msg}")]
    File { path: PathBuf, msg: String },
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Clone, Debug)]
pub struct EvalOptions {
    pub oracle: bool,
    /// Overrides the truncation of the oracle complex.
    pub truncation: Option<u32>,
    pub oracle_limit: usize,
    pub dump_complex: bool,
    /// Relative `@path` atoms are resolved against this directory.
    pub base_dir: Option<PathBuf>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { oracle: false, truncation: None, oracle_limit: DEFAULT_ORACLE_LIMIT, dump_complex: false, base_dir: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    #[serde(with = "crate::rational::serde_q_vec")]
    pub leaves: Vec<Q>,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub angles: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub text: String,
    pub coefficient: i64,
    /// Class of the atom, before weighting.
    pub class: LocalClass,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub monotone: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<ProfileJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleStatus {
    Agree { generators: usize, truncation: u32 },
    Mismatch { generators: usize, truncation: u32, oracle: Terms },
    Skipped { generators: usize, limit: usize },
    Failed { error: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub terms: Vec<TermReport>,
    pub total: LocalClass,
    #[serde(with = "crate::rational::serde_q")]
    pub d: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub d_bar: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub d_under: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub mu_bar: Q,
    pub rokhlin: Option<u8>,
    pub infinite_order: OrderVerdict,
    pub realizability: Realizability,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleStatus>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub complex: Option<ComplexJson>,
}

struct Ingested {
    class: LocalClass,
    monotone: Option<MonotoneRoot>,
    profile: Option<SymmetricRootProfile>,
}

impl Ingested {
    fn from_profile(p: SymmetricRootProfile) -> Self {
        let m = MonotoneRoot::extract(&p);
        Ingested { class: m.decompose(), monotone: Some(m), profile: Some(p) }
    }

    /// Complex fed to the oracle for one copy of this atom.
    fn complex(&self) -> IotaComplex {
        match (&self.profile, &self.monotone) {
            (Some(p), _) if 2 * p.len() - 1 <= FULL_PROFILE_LIMIT => p.standard_complex(),
            (_, Some(m)) => m.to_profile().standard_complex(),
            _ => self.class.oracle_complex(),
        }
    }

    fn complex_len(&self) -> usize {
        match (&self.profile, &self.monotone) {
            (Some(p), _) if 2 * p.len() - 1 <= FULL_PROFILE_LIMIT => 2 * p.len() - 1,
            (_, Some(m)) => 2 * m.to_profile().len() - 1,
            _ => self.class.oracle_size(),
        }
    }
}

fn ingest(atom: &Atom, base: Option<&Path>) -> Result<Ingested, EvalError> {
    Ok(match atom {
        Atom::Sigma(p) => {
            let r = p.root()?;
            Ingested { class: r.class, monotone: Some(r.monotone), profile: Some(r.profile) }
        }
        Atom::Y(i) => {
            let m = MonotoneRoot::new(vec![(q(2 * *i as i64), q(0))]).expect("M(2i, 0) is monotone");
            Ingested { class: LocalClass::y(*i), monotone: Some(m), profile: None }
        }
        Atom::M(m) => Ingested { class: m.decompose(), monotone: Some(m.clone()), profile: None },
        Atom::Shift(d) => Ingested { class: LocalClass::tower(*d), monotone: None, profile: None },
        Atom::File(path) => {
            let full = match base {
                Some(b) if path.is_relative() => b.join(path),
                _ => path.clone(),
            };
            let text = std::fs::read_to_string(&full)
                .map_err(|e| EvalError::File { path: full.clone(), msg: e.to_string() })?;
            let p = RootProfile::from_text(&text).map_err(|e| EvalError::File { path: full.clone(), msg: e.to_string() })?;
            let p = SymmetricRootProfile::new(p).map_err(|e| EvalError::File { path: full, msg: e.to_string() })?;
            Ingested::from_profile(p)
        }
    })
}

pub fn evaluate(input: &str, opts: &EvalOptions) -> Result<Report, EvalError> {
    evaluate_expr(input, &parse_expr(input)?, opts)
}

pub fn evaluate_expr(input: &str, expr: &Expr, opts: &EvalOptions) -> Result<Report, EvalError> {
    let mut ingested = Vec::new();
    let mut terms = Vec::new();
    let mut total = LocalClass::zero();
    for t in &expr.terms {
        let ing = ingest(&t.atom, opts.base_dir.as_deref())?;
        total = total.add(&ing.class.scale(t.coefficient));
        terms.push(TermReport {
            text: t.atom.to_string(),
            coefficient: t.coefficient,
            class: ing.class.clone(),
            monotone: ing.monotone.as_ref().map(|m| m.to_string()),
            profile: ing.profile.as_ref().filter(|p| p.len() <= REPORT_PROFILE_LIMIT).map(|p| ProfileJson {
                leaves: p.profile().leaves.clone(),
                angles: p.profile().angles.clone(),
            }),
        });
        ingested.push((t.coefficient, ing));
    }
    let closed = correction_terms(&total);
    let mut report = Report {
        input: input.to_string(),
        terms,
        d: closed.d,
        d_bar: closed.d_bar,
        d_under: closed.d_under,
        mu_bar: total.mu_bar(),
        rokhlin: total.rokhlin().ok(),
        infinite_order: total.infinite_order_verdict(),
        realizability: total.realizability_check(),
        total,
        oracle: None,
        complex: None,
    };
    if opts.oracle || opts.dump_complex {
        let generators = ingested
            .iter()
            .map(|(c, ing)| ing.complex_len().saturating_pow(c.unsigned_abs().min(u32::MAX as u64) as u32))
            .fold(1usize, usize::saturating_mul);
        if generators > opts.oracle_limit {
            report.oracle = Some(OracleStatus::Skipped { generators, limit: opts.oracle_limit });
            return Ok(report);
        }
        let mut c = IotaComplex::trivial();
        for (k, ing) in &ingested {
            let one = ing.complex();
            let factor = if *k > 0 { one } else { one.dual() };
            for _ in 0..k.unsigned_abs() {
                c = c.tensor(&factor);
            }
        }
        if let Some(n) = opts.truncation {
            c = c.with_truncation(n);
        }
        if opts.dump_complex {
            report.complex = Some(c.to_json());
        }
        if opts.oracle {
            report.oracle = Some(match c.correction_terms() {
                Ok(t) if t == closed => OracleStatus::Agree { generators: c.len(), truncation: c.truncation },
                Ok(t) => OracleStatus::Mismatch { generators: c.len(), truncation: c.truncation, oracle: t },
                Err(e) => OracleStatus::Failed { error: e.to_string() },
            });
        }
    }
    Ok(report)
}

impl Report {
    pub fn oracle_mismatch(&self) -> bool {
        matches!(self.oracle, Some(OracleStatus::Mismatch { .. }))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let row = |s: &mut String, k: &str, v: &str| writeln!(s, "{k:<13}{v}").unwrap();
        row(&mut s, "input", &self.input);
        for t in &self.terms {
            let root = t.monotone.as_deref().unwrap_or("-");
            row(&mut s, "term", &format!("{:+} x {}  root {}  class {}", t.coefficient, t.text, root, t.class));
        }
        row(&mut s, "total", &self.total.to_string());
        row(&mut s, "d", &fmt_q(&self.d));
        row(&mut s, "d_bar", &fmt_q(&self.d_bar));
        row(&mut s, "d_under", &fmt_q(&self.d_under));
        row(&mut s, "mu_bar", &fmt_q(&self.mu_bar));
        row(&mut s, "rokhlin", &self.rokhlin.map_or("n/a (non-integral mu_bar)".into(), |r| r.to_string()));
        row(&mut s, "order", &self.infinite_order.to_string());
        let real = match (&self.realizability.passes, &self.realizability.orientation) {
            (true, Some(o)) => format!("necessary conditions hold ({o:?} orientation)").to_lowercase(),
            _ => format!("fails: {}", self.realizability.reasons.join("; ")),
        };
        row(&mut s, "realizable", &real);
        if let Some(o) = &self.oracle {
            let v = match o {
                OracleStatus::Agree { generators, truncation } => {
                    format!("agree ({generators} generators, truncation {truncation})")
                }
                OracleStatus::Mismatch { generators, oracle, .. } => {
                    format!("MISMATCH: oracle {oracle} on {generators} generators")
                }
                OracleStatus::Skipped { generators, limit } => {
                    format!("skipped ({generators} generators exceeds limit {limit})")
                }
                OracleStatus::Failed { error } => format!("failed: {error}"),
            };
            row(&mut s, "oracle", &v);
        }
        s
    }
}
