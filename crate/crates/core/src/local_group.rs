//! Classes `(Σ c_i Y_i)[Δ]` in the span of the `Y_i`, and the invariants read off them.
//!
//! `[Δ]` means tensoring with a single tower whose top sits in grading `-Δ`,
//! so a class with no coefficients has `d = -Δ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::fu_core::IotaComplex;
use crate::graded_roots::SymmetricRootProfile;
use crate::rational::{as_int, fmt_q, parse_q, q, Q};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalClass {
    coeffs: BTreeMap<u32, i64>,
    #[serde(with = "crate::rational::serde_q")]
    shift: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassError {
    #[error("μ̄ = {0} is not an integer; the Rokhlin invariant needs an integer homology sphere class")]
    NotIntegral(String),
    #[error("class has negative coefficients; spherical parameters need a non-negative class")]
    MixedSign,
    #[error("cannot parse class `{text}`: {msg}")]
    Parse { text: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderVerdict {
    InfiniteOrder,
    NoObstruction,
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderVerdict::InfiniteOrder => f.write_str("infinite order"),
            OrderVerdict::NoObstruction => f.write_str("locally trivial (no obstruction from this theory)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Usual,
    Reversed,
    /// No coefficients: both orientations are allowed.
    Either,
}

/// Necessary conditions for a single almost-rational plumbing to carry the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizability {
    pub passes: bool,
    pub orientation: Option<Orientation>,
    pub reasons: Vec<String>,
}

/// `S(d, n; Δ_1, ..., Δ_n)` with `Δ_1 >= ... >= Δ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalParams {
    pub d: Q,
    pub deltas: Vec<i64>,
}

impl SphericalParams {
    pub fn complex(&self) -> IotaComplex {
        IotaComplex::spherical(self.d, &self.deltas).expect("deltas are even and non-negative")
    }
}

impl LocalClass {
    pub fn new(coeffs: impl IntoIterator<Item = (u32, i64)>, shift: Q) -> Self {
        let mut m: BTreeMap<u32, i64> = BTreeMap::new();
        for (i, c) in coeffs {
            if i > 0 {
                *m.entry(i).or_default() += c;
            }
        }
        m.retain(|_, c| *c != 0);
        LocalClass { coeffs: m, shift }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn y(i: u32) -> Self {
        Self::new([(i, 1)], q(0))
    }

    /// `I[Δ]`.
    pub fn tower(shift: Q) -> Self {
        Self::new([], shift)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn shift(&self) -> Q {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.shift.is_zero()
    }

    pub fn add(&self, other: &LocalClass) -> LocalClass {
        LocalClass::new(
            self.coeffs.iter().chain(&other.coeffs).map(|(&i, &c)| (i, c)),
            self.shift + other.shift,
        )
    }

    pub fn neg(&self) -> LocalClass {
        LocalClass::new(self.coeffs.iter().map(|(&i, &c)| (i, -c)), -self.shift)
    }

    pub fn scale(&self, k: i64) -> LocalClass {
        LocalClass::new(self.coeffs.iter().map(|(&i, &c)| (i, k * c)), self.shift * q(k))
    }

    pub fn shifted(&self, by: Q) -> LocalClass {
        LocalClass { coeffs: self.coeffs.clone(), shift: self.shift + by }
    }

    pub fn d_invariant(&self) -> Q {
        let s: i64 = self.coeffs.iter().map(|(&i, &c)| 2 * i as i64 * c).sum();
        q(s) - self.shift
    }

    pub fn mu_bar(&self) -> Q {
        self.shift / q(2)
    }

    pub fn rokhlin(&self) -> Result<u8, ClassError> {
        let m = self.mu_bar();
        as_int(&m).map(|k| k.rem_euclid(2) as u8).ok_or_else(|| ClassError::NotIntegral(fmt_q(&m)))
    }

    pub fn infinite_order_verdict(&self) -> OrderVerdict {
        if self.is_zero() {
            OrderVerdict::NoObstruction
        } else {
            OrderVerdict::InfiniteOrder
        }
    }

    pub fn realizability_check(&self) -> Realizability {
        let mut reasons = Vec::new();
        for (i, c) in &self.coeffs {
            if c.abs() > 1 {
                reasons.push(format!("coefficient {c} on Y{i} is not in {{-1, 0, 1}}"));
            }
        }
        let nz: Vec<(u32, i64)> = self.coeffs.iter().map(|(&i, &c)| (i, c)).collect();
        for w in nz.windows(2) {
            if w[0].1.signum() == w[1].1.signum() {
                reasons.push(format!("Y{} and Y{} have the same sign; nonzero coefficients must alternate", w[0].0, w[1].0));
            }
        }
        let orientation = match nz.last() {
            None => Some(Orientation::Either),
            Some(&(_, c)) if c > 0 => Some(Orientation::Usual),
            Some(&(_, c)) if c < 0 => Some(Orientation::Reversed),
            _ => None,
        };
        let passes = reasons.is_empty();
        Realizability { passes, orientation: orientation.filter(|_| passes), reasons }
    }

    /// Spherical parameters of a non-negative class, with the shift folded into `d`.
    pub fn spherical_params(&self) -> Result<SphericalParams, ClassError> {
        if self.coeffs.values().any(|&c| c < 0) {
            return Err(ClassError::MixedSign);
        }
        let mut deltas: Vec<i64> = self
            .coeffs
            .iter()
            .flat_map(|(&i, &c)| std::iter::repeat_n(2 * i as i64, c as usize))
            .collect();
        deltas.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SphericalParams { d: self.d_invariant(), deltas })
    }

    /// Positive and negative parts, each as a class without shift.
    pub fn split(&self) -> (LocalClass, LocalClass) {
        let pos = LocalClass::new(self.coeffs.iter().filter(|(_, c)| **c > 0).map(|(&i, &c)| (i, c)), q(0));
        let neg = LocalClass::new(self.coeffs.iter().filter(|(_, c)| **c < 0).map(|(&i, &c)| (i, -c)), q(0));
        (pos, neg)
    }

    /// Number of generators of [`oracle_complex`](Self::oracle_complex).
    pub fn oracle_size(&self) -> usize {
        self.coeffs.values().map(|c| 3usize.saturating_pow(c.unsigned_abs() as u32)).product()
    }

    /// Tensor product of standard complexes of `M(2i, 0)` (dualized for negative
    /// coefficients) with a tower at `-Δ`. Built only from the root data, never
    /// from the closed forms.
    pub fn oracle_complex(&self) -> IotaComplex {
        let mut c = IotaComplex::tower(-self.shift);
        for (&i, &k) in &self.coeffs {
            let h = 2 * i as i64;
            let std = SymmetricRootProfile::from_ints(&[h, h], &[0]).expect("valid root").standard_complex();
            let factor = if k > 0 { std } else { std.dual() };
            for _ in 0..k.unsigned_abs() {
                c = c.tensor(&factor);
            }
        }
        c
    }

    /// JSON form `{"coeffs": {"2": 1}, "shift": "-2"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ClassError> {
        let raw: LocalClass = serde_json::from_value(v.clone())
            .map_err(|e| ClassError::Parse { text: v.to_string(), msg: e.to_string() })?;
        Ok(LocalClass::new(raw.coeffs, raw.shift))
    }

    /// Parses the text form `(+1*Y[2] -1*Y[1])[Δ=-2]`.
    pub fn parse(text: &str) -> Result<Self, ClassError> {
        let err = |msg: &str| ClassError::Parse { text: text.into(), msg: msg.into() };
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
        let (inner, tail) = body.split_once(')').ok_or_else(|| err("expected `)`"))?;
        let shift = tail
            .strip_prefix("[Δ=")
            .or_else(|| tail.strip_prefix("[D="))
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err("expected `[Δ=...]` after the coefficients"))?;
        let shift = parse_q(shift).map_err(|e| err(&e))?;
        let mut coeffs = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let end = rest[1..].find(['+', '-']).map_or(rest.len(), |k| k + 1);
            let (term, next) = rest.split_at(end);
            let (c, y) = term.split_once('*').ok_or_else(|| err("expected `c*Y[i]`"))?;
            let c: i64 = c.parse().map_err(|_| err("bad coefficient"))?;
            let i: u32 = y
                .strip_prefix("Y[")
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| err("bad basis element"))?;
            coeffs.push((i, c));
            rest = next;
        }
        Ok(LocalClass::new(coeffs, shift))
    }
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().rev().map(|(i, c)| format!("{c:+}*Y[{i}]")).collect();
        write!(f, "({})[Δ={}]", terms.join(" "), fmt_q(&self.shift))
    }
}

impl Add for &LocalClass {
    type Output = LocalClass;
    fn add(self, rhs: &LocalClass) -> LocalClass {
        LocalClass::add(self, rhs)
    }
}

impl Add for LocalClass {
    type Output = LocalClass;
    fn add(self, rhs: LocalClass) -> LocalClass {
        LocalClass::add(&self, &rhs)
    }
}

impl Sub for LocalClass {
    type Output = LocalClass;
    fn sub(self, rhs: LocalClass) -> LocalClass {
        LocalClass::add(&self, &rhs.neg())
    }
}

impl Neg for LocalClass {
    type Output = LocalClass;
    fn neg(self) -> LocalClass {
        LocalClass::neg(&self)
    }
}
