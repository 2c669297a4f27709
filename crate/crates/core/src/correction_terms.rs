//! Closed forms for `d̲` and `d̄` of a class `(Y_{s_1} + ... + Y_{s_m}) - (Y_{t_1} + ... + Y_{t_n})`,
//! their stabilization under repeated sums, and families with prescribed invariants.
//!
//! ```text
//!   P_i = 2(t_1 + ... + t_i - s_1 - ... - s_i)          0 <= i <= min(m, n)
//!   Q_i = 2(t_1 + ... + t_i - s_1 - ... - s_{i+1})      0 <= i <= min(m - 1, n)
//!   S   = max_k min(P_0, ..., P_k, Q_k)                 Q dropped at k = min(m, n) = m
//!   T   = min_k max(Q_0, ..., Q_{k-1}, P_k)             P dropped at k = min(m, n + 1) = n + 1
//! ```
//!
//! `d̲ = d + S`, and `d̄` comes from the same formula applied to the negated class.

use serde::Serialize;

use crate::fu_core::Terms;
use crate::local_group::LocalClass;
use crate::rational::{as_int, q};

/// Indices of the positive part `s` and the negative part `t`, each listed
/// with multiplicity in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct STProfile {
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

impl STProfile {
    pub fn new(mut s: Vec<u32>, mut t: Vec<u32>) -> Self {
        s.sort_unstable_by(|a, b| b.cmp(a));
        t.sort_unstable_by(|a, b| b.cmp(a));
        STProfile { s, t }
    }

    pub fn from_class(a: &LocalClass) -> Self {
        let mut s = Vec::new();
        let mut t = Vec::new();
        for (&i, &c) in a.coeffs() {
            let side = if c > 0 { &mut s } else { &mut t };
            side.extend(std::iter::repeat_n(i, c.unsigned_abs() as usize));
        }
        STProfile::new(s, t)
    }

    pub fn swapped(&self) -> Self {
        STProfile { s: self.t.clone(), t: self.s.clone() }
    }

    fn m(&self) -> usize {
        self.s.len()
    }

    fn n(&self) -> usize {
        self.t.len()
    }

    /// `(P_0..P_{min(m,n)}, Q_0..Q_{min(m-1,n)})`; `Q` is empty when `m = 0`.
    pub fn p_q_sequences(&self) -> (Vec<i64>, Vec<i64>) {
        let (m, n) = (self.m(), self.n());
        let sum = |v: &[u32], k: usize| v[..k].iter().map(|&x| x as i64).sum::<i64>();
        let p = (0..=m.min(n)).map(|i| 2 * (sum(&self.t, i) - sum(&self.s, i))).collect();
        let q = if m == 0 {
            Vec::new()
        } else {
            (0..=(m - 1).min(n)).map(|i| 2 * (sum(&self.t, i) - sum(&self.s, i + 1))).collect()
        };
        (p, q)
    }

    /// `S = d̲ - d`.
    pub fn d_lower_offset(&self) -> i64 {
        let (p, qs) = self.p_q_sequences();
        let last = self.m().min(self.n());
        let mut best = i64::MIN;
        let mut run = i64::MAX;
        for k in 0..=last {
            run = run.min(p[k]);
            let term = if k == last && last == self.m() { run } else { run.min(qs[k]) };
            best = best.max(term);
        }
        best
    }

    /// The dual min-max bound, evaluated on its own index ranges.
    pub fn dual_bound(&self) -> i64 {
        let (m, n) = (self.s.len(), self.t.len());
        let two = |v: &[u32]| v.iter().map(|&x| 2 * x as i64).collect::<Vec<_>>();
        let (a, b) = (two(&self.s), two(&self.t));
        let big_p = |i: usize| b[..i].iter().sum::<i64>() - a[..i].iter().sum::<i64>();
        let big_q = |i: usize| b[..i].iter().sum::<i64>() - a[..=i].iter().sum::<i64>();
        let top = m.min(n + 1);
        (0..=top)
            .map(|k| {
                let qmax = (0..k).map(big_q).max();
                let with_p = !(k == top && top == n + 1);
                match (qmax, with_p) {
                    (Some(x), true) => x.max(big_p(k)),
                    (Some(x), false) => x,
                    (None, _) => big_p(k),
                }
            })
            .min()
            .expect("k = 0 always present")
    }

    /// `S == T`.
    pub fn min_max_identity(&self) -> bool {
        self.d_lower_offset() == self.dual_bound()
    }

    /// Lower bound for `d̄ - d` built from the `R_i` sequence. Used only to
    /// test the closed form against a second route.
    pub fn d_upper_lower_bound(&self) -> i64 {
        let (m, n) = (self.s.len(), self.t.len());
        let sa = |i: usize| self.s[..i].iter().map(|&x| 2 * x as i64).sum::<i64>();
        let tb = |i: usize| self.t[..i].iter().map(|&x| 2 * x as i64).sum::<i64>();
        let p = |i: usize| tb(i) - sa(i);
        let r = |i: usize| tb(i) - sa(i - 1);
        let top = (m + 1).min(n);
        let mut best = p(0);
        let mut run = i64::MAX;
        for k in 1..=top {
            run = run.min(r(k));
            let term = if k == top && top == m + 1 { run } else { run.min(p(k)) };
            best = best.max(term);
        }
        best
    }
}

/// `(d, d̄, d̲)` of a class from the closed form.
pub fn correction_terms(a: &LocalClass) -> Terms {
    let d = a.d_invariant();
    let st = STProfile::from_class(a);
    let d_under = d + q(st.d_lower_offset());
    let d_bar = d - q(st.swapped().d_lower_offset());
    Terms { d, d_bar, d_under }
}

/// Correction terms of the `k`-fold sum.
pub fn stabilized_terms(a: &LocalClass, k: u32) -> Terms {
    correction_terms(&a.scale(k as i64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `t_1 > s_1`: `d̄ = kd + 2t_1`, `d̲ = kd`.
    NegativeLeads,
    /// `s_1 > t_1`: `d̄ = kd`, `d̲ = kd - 2s_1`.
    PositiveLeads,
    /// No coefficients: all three terms equal `kd`.
    Flat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticReport {
    pub regime: Regime,
    /// Least `k` from which the predicted values hold through `checked_until`.
    pub threshold: Option<u32>,
    /// The `k` at which the sufficient condition from the stabilization argument first holds.
    pub sufficient: u32,
    pub checked_until: u32,
}

impl AsymptoticReport {
    pub fn holds(&self) -> bool {
        self.threshold.is_some_and(|t| t <= self.sufficient)
    }
}

pub fn predicted_terms(a: &LocalClass, k: u32) -> Terms {
    let st = STProfile::from_class(a);
    let s1 = st.s.first().copied().unwrap_or(0) as i64;
    let t1 = st.t.first().copied().unwrap_or(0) as i64;
    let kd = a.d_invariant() * q(k as i64);
    match regime(s1, t1) {
        Regime::NegativeLeads => Terms { d: kd, d_bar: kd + q(2 * t1), d_under: kd },
        Regime::PositiveLeads => Terms { d: kd, d_bar: kd, d_under: kd - q(2 * s1) },
        Regime::Flat => Terms { d: kd, d_bar: kd, d_under: kd },
    }
}

fn regime(s1: i64, t1: i64) -> Regime {
    match s1.cmp(&t1) {
        std::cmp::Ordering::Less => Regime::NegativeLeads,
        std::cmp::Ordering::Greater => Regime::PositiveLeads,
        std::cmp::Ordering::Equal => Regime::Flat,
    }
}

/// Least `k` where the stabilization argument applies. For `t_1 > s_1` the
/// `d̲` side needs `Q_{k-1} >= 0` and the `d̄` side `P_k <= -2t_1` on the
/// negated class; both reduce to `k(t_1 - s_1) >= t_1`. Symmetric otherwise.
fn sufficient_k(s1: i64, t1: i64) -> u32 {
    let ceil_div = |a: i64, b: i64| (a + b - 1) / b;
    let k = match regime(s1, t1) {
        Regime::NegativeLeads => ceil_div(t1, t1 - s1),
        Regime::PositiveLeads => ceil_div(s1, s1 - t1),
        Regime::Flat => 1,
    };
    k.max(1) as u32
}

/// Finds where the stabilized values take over and checks that they persist
/// for `persist` further steps (at least up to `2k`).
pub fn asymptotic_check(a: &LocalClass, persist: u32) -> AsymptoticReport {
    let st = STProfile::from_class(a);
    let s1 = st.s.first().copied().unwrap_or(0) as i64;
    let t1 = st.t.first().copied().unwrap_or(0) as i64;
    let sufficient = sufficient_k(s1, t1);
    let holds_at = |k: u32| stabilized_terms(a, k) == predicted_terms(a, k);
    let horizon = |k: u32| (k + persist).max(2 * k);
    let limit = sufficient + 1;
    let threshold = (1..=limit).find(|&k| (k..=horizon(k)).all(holds_at));
    let checked_until = horizon(threshold.unwrap_or(limit));
    AsymptoticReport { regime: regime(s1, t1), threshold, sufficient, checked_until }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("M and N are both zero: d̄ = d = d̲ is realized only by a shifted trivial class")]
    Degenerate,
    #[error("d + 2μ̄ = {0} is odd; the family needs even gradings")]
    Odd(String),
}

/// A class with `d̄ - d = 2M`, `d - d̲ = 2N`, the requested `d` and `μ̄`,
/// indexed by `k >= 0`; different `k` give different classes.
pub fn realization_family(m: u32, n: u32, d: i64, mu_bar: i64, k: u32) -> Result<LocalClass, FamilyError> {
    if m == 0 && n == 0 {
        return Err(FamilyError::Degenerate);
    }
    let delta = 2 * mu_bar;
    let d0 = d + delta;
    if d0 % 2 != 0 {
        return Err(FamilyError::Odd(d0.to_string()));
    }
    let base = if n == 0 {
        // Y_a - Y_b cancels when N = 0; take the negative of the mirrored family
        family_unshifted(0, m, -d0, k).neg()
    } else {
        family_unshifted(m, n, d0, k)
    };
    Ok(base.shifted(q(delta)))
}

fn family_unshifted(m: u32, n: u32, d0: i64, k: u32) -> LocalClass {
    let mm = m as i64;
    if d0 <= -2 * mm {
        let cnt = (-2 * mm - d0) / 2;
        let a = m + 2 * n + k;
        let b = m + n + k;
        let c = m + n;
        LocalClass::new([(a, 1), (b, -1), (c, -1), (1, -cnt)], q(0))
    } else {
        let cnt = (d0 + 2 * mm - 2) / 2;
        let a = m + 2 * n + 1 + k;
        let b = m + n + 1 + k;
        let c = m + n + 1;
        LocalClass::new([(a, 1), (b, -1), (c, -1), (1, 2 + cnt)], q(0))
    }
}

/// Integer value of a correction term, for callers that know the class is integral.
pub fn int_terms(t: &Terms) -> Option<(i64, i64, i64)> {
    Some((as_int(&t.d)?, as_int(&t.d_bar)?, as_int(&t.d_under)?))
}
