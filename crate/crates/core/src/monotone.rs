//! Monotone roots `M(h_1, r_1; ...; h_n, r_n)`: extraction from a symmetric
//! root, simplification, the swap move, and the decomposition into `Y_i`.

use std::fmt;

use crate::graded_roots::{RootProfile, SymmetricRootProfile};
use crate::local_group::LocalClass;
use crate::rational::{as_int, fmt_q, parse_q, q, same_coset2, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonotoneError {
    #[error("invalid monotone root {root}: {msg}")]
    Invalid { root: String, msg: String },
    #[error("swap index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },
    #[error("δ̃ needs a root of type 1, got type {0}")]
    NotTypeOne(usize),
    #[error("cannot parse `{text}`: {msg}")]
    Parse { text: String, msg: String },
}

/// Parameters with `h` strictly decreasing, `r` strictly increasing, `h_n >= r_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneRoot {
    params: Vec<(Q, Q)>,
}

/// As [`MonotoneRoot`], with the inequalities between consecutive pairs relaxed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeaklyMonotoneRoot {
    params: Vec<(Q, Q)>,
}

fn check(params: &[(Q, Q)], strict: bool) -> Result<(), String> {
    let Some(&(h0, _)) = params.first() else {
        return Err("no parameters".into());
    };
    for (i, &(h, r)) in params.iter().enumerate() {
        if !same_coset2(&h, &h0) || !same_coset2(&r, &h0) {
            return Err(format!("pair {} is not an even integer away from h_1", i + 1));
        }
    }
    for (i, w) in params.windows(2).enumerate() {
        let ((h, r), (h2, r2)) = (w[0], w[1]);
        let bad = if strict { h <= h2 || r >= r2 } else { h < h2 || r > r2 };
        if bad {
            let kind = if strict { "strictly" } else { "weakly" };
            return Err(format!("pairs {} and {} are not {kind} monotone", i + 1, i + 2));
        }
    }
    let (hn, rn) = *params.last().unwrap();
    if hn < rn {
        return Err(format!("h_n = {} is below r_n = {}", fmt_q(&hn), fmt_q(&rn)));
    }
    Ok(())
}

fn render(params: &[(Q, Q)]) -> String {
    let body: Vec<String> = params.iter().map(|(h, r)| format!("{},{}", fmt_q(h), fmt_q(r))).collect();
    format!("M({})", body.join("; "))
}

fn profile_of(params: &[(Q, Q)]) -> SymmetricRootProfile {
    let n = params.len();
    let (hn, rn) = params[n - 1];
    let left: Vec<Q> = params.iter().map(|p| p.0).collect();
    let outer: Vec<Q> = params[..n - 1].iter().map(|p| p.1).collect();
    let mut leaves = left.clone();
    let mut angles = outer.clone();
    if hn == rn {
        // the two central leaves and the angle between them become one J-fixed leaf
        leaves.extend(left[..n - 1].iter().rev());
    } else {
        leaves.extend(left.iter().rev());
        angles.push(rn);
    }
    angles.extend(outer.iter().rev());
    SymmetricRootProfile::new(RootProfile::new(leaves, angles)).expect("monotone parameters give a valid root")
}

/// `+1` at `(h_i - r_i)/2`, `-1` at `(h_{i+1} - r_i)/2`, shift `-r_n`.
fn decompose_params(params: &[(Q, Q)]) -> LocalClass {
    let idx = |x: Q| as_int(&(x / q(2))).expect("even difference") as u32;
    let mut terms = Vec::new();
    for (i, &(h, r)) in params.iter().enumerate() {
        terms.push((idx(h - r), 1));
        if let Some(&(h2, _)) = params.get(i + 1) {
            terms.push((idx(h2 - r), -1));
        }
    }
    LocalClass::new(terms, -params.last().unwrap().1)
}

/// Keeps the pairs not dominated in both coordinates, sorted by `h` descending.
fn frontier(mut pairs: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    pairs.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
    let mut out: Vec<(Q, Q)> = Vec::new();
    for p in pairs {
        // everything kept so far has h >= p.h; p survives iff its c beats all of them
        if out.last().is_none_or(|l| p.1 > l.1) {
            out.push(p);
        }
    }
    out
}

fn parse_params(text: &str) -> Result<Vec<(Q, Q)>, MonotoneError> {
    let err = |msg: &str| MonotoneError::Parse { text: text.into(), msg: msg.into() };
    let t = text.trim();
    let inner = t
        .strip_prefix("M(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err("expected M(h1,r1; ...)"))?;
    inner
        .split(';')
        .map(|pair| {
            let (h, r) = pair.split_once(',').ok_or_else(|| err("each pair needs `h,r`"))?;
            Ok((parse_q(h).map_err(|e| err(&e))?, parse_q(r).map_err(|e| err(&e))?))
        })
        .collect()
}

impl MonotoneRoot {
    pub fn new(params: Vec<(Q, Q)>) -> Result<Self, MonotoneError> {
        check(&params, true).map_err(|msg| MonotoneError::Invalid { root: render(&params), msg })?;
        Ok(MonotoneRoot { params })
    }

    pub fn from_ints(params: &[(i64, i64)]) -> Result<Self, MonotoneError> {
        Self::new(params.iter().map(|&(h, r)| (q(h), q(r))).collect())
    }

    pub fn parse(text: &str) -> Result<Self, MonotoneError> {
        Self::new(parse_params(text)?)
    }

    pub fn params(&self) -> &[(Q, Q)] {
        &self.params
    }

    pub fn root_type(&self) -> usize {
        self.params.len()
    }

    pub fn delta_tilde(&self) -> Result<Q, MonotoneError> {
        match self.params.as_slice() {
            [(h, r)] => Ok(*h - *r),
            p => Err(MonotoneError::NotTypeOne(p.len())),
        }
    }

    pub fn to_profile(&self) -> SymmetricRootProfile {
        profile_of(&self.params)
    }

    /// Monotone subroot of a symmetric root: the Pareto frontier of
    /// `(leaf grading, mirror merge)` over the left half.
    pub fn extract(p: &SymmetricRootProfile) -> MonotoneRoot {
        let half = p.len().div_ceil(2);
        let pairs = (1..=half)
            .map(|i| (p.profile().leaves[i - 1], p.mirror_merge(i).expect("index in range")))
            .collect();
        MonotoneRoot::new(frontier(pairs)).expect("frontier of a valid root is monotone")
    }

    pub fn decompose(&self) -> LocalClass {
        decompose_params(&self.params)
    }

    pub fn as_weak(&self) -> WeaklyMonotoneRoot {
        WeaklyMonotoneRoot { params: self.params.clone() }
    }
}

impl WeaklyMonotoneRoot {
    pub fn new(params: Vec<(Q, Q)>) -> Result<Self, MonotoneError> {
        check(&params, false).map_err(|msg| MonotoneError::Invalid { root: render(&params), msg })?;
        Ok(WeaklyMonotoneRoot { params })
    }

    pub fn from_ints(params: &[(i64, i64)]) -> Result<Self, MonotoneError> {
        Self::new(params.iter().map(|&(h, r)| (q(h), q(r))).collect())
    }

    pub fn parse(text: &str) -> Result<Self, MonotoneError> {
        Self::new(parse_params(text)?)
    }

    pub fn params(&self) -> &[(Q, Q)] {
        &self.params
    }

    pub fn root_type(&self) -> usize {
        self.params.len()
    }

    pub fn to_profile(&self) -> SymmetricRootProfile {
        profile_of(&self.params)
    }

    /// Drops `(h_i, r_i)` wherever `h_i = h_{i+1}`, and `(h_{i+1}, r_{i+1})`
    /// wherever `r_i = r_{i+1}`. The result is strictly monotone.
    pub fn simplify(&self) -> MonotoneRoot {
        MonotoneRoot::new(frontier(self.params.clone())).expect("frontier is strictly monotone")
    }

    /// Only the equal-height deletions; may leave equal angles in place.
    pub fn delete_equal_heights(&self) -> WeaklyMonotoneRoot {
        let p = &self.params;
        let params = (0..p.len()).filter(|&i| p.get(i + 1).is_none_or(|n| n.0 != p[i].0)).map(|i| p[i]).collect();
        WeaklyMonotoneRoot { params }
    }

    pub fn decompose(&self) -> LocalClass {
        decompose_params(&self.params)
    }

    /// Exchanges the parts of `x` beyond pair `a` and of `y` beyond pair `b`
    /// (1-based), re-graded by `Δ = s_a - t_b`. `None` when the result would
    /// not be weakly monotone.
    pub fn swap(
        x: &WeaklyMonotoneRoot,
        y: &WeaklyMonotoneRoot,
        a: usize,
        b: usize,
    ) -> Result<Option<(WeaklyMonotoneRoot, WeaklyMonotoneRoot)>, MonotoneError> {
        let (m, n) = (x.root_type(), y.root_type());
        if a == 0 || a > m {
            return Err(MonotoneError::Index { index: a, max: m });
        }
        if b == 0 || b > n {
            return Err(MonotoneError::Index { index: b, max: n });
        }
        let (xp, yp) = (&x.params, &y.params);
        let delta = xp[a - 1].1 - yp[b - 1].1;
        if yp.get(b).is_some_and(|&(qb1, _)| xp[a - 1].0 < qb1 + delta) {
            return Ok(None);
        }
        if xp.get(a).is_some_and(|&(pa1, _)| yp[b - 1].0 < pa1 - delta) {
            return Ok(None);
        }
        let mut x2 = xp[..a].to_vec();
        x2.extend(yp[b..].iter().map(|&(h, r)| (h + delta, r + delta)));
        let mut y2 = yp[..b].to_vec();
        y2.extend(xp[a..].iter().map(|&(h, r)| (h - delta, r - delta)));
        Ok(Some((WeaklyMonotoneRoot::new(x2)?, WeaklyMonotoneRoot::new(y2)?)))
    }
}

impl fmt::Display for MonotoneRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.params))
    }
}

impl fmt::Display for WeaklyMonotoneRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.params))
    }
}
