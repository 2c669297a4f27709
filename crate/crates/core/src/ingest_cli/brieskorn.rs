//! Brieskorn spheres `Σ(p, q, r)`: Seifert invariants, the star-shaped plumbing,
//! and the graded root read off the numerical semigroup `<pq, pr, qr>`.

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::plumbing::{PlumbingError, PlumbingGraph};
use crate::graded_roots::{RootError, RootProfile, SymmetricRootProfile};
use crate::local_group::LocalClass;
use crate::monotone::MonotoneRoot;
use crate::rational::{q, Q};

/// Largest Frobenius-type bound `pqr - pq - qr - pr` the semigroup walk accepts.
pub const MAX_SEMIGROUP_SPAN: i64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BrieskornError {
    #[error("Σ({0},{1},{2}): parameters must be at least 2 and pairwise coprime")]
    NotCoprime(u64, u64, u64),
    #[error("Σ({0},{1},{2}) needs a semigroup walk of length {3}, above the limit {MAX_SEMIGROUP_SPAN}")]
    TooLarge(u64, u64, u64, i64),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("d = {0} is not an integer")]
    NonIntegral(String),
}

/// `a1 < a2 < a3`, pairwise coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BrieskornParams {
    a: [u64; 3],
}

/// Seifert data of `Σ(a1, a2, a3)` as the boundary of a negative definite plumbing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertInvariants {
    pub e0: i64,
    /// `(α_i, ω_i)` with `0 < ω_i < α_i`.
    pub fibers: Vec<(i64, i64)>,
}

/// Everything the pipeline produces for one sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornRoot {
    pub params: BrieskornParams,
    pub d: Q,
    /// In the `h` normalization, where `S³` has `d = 0`.
    pub profile: SymmetricRootProfile,
    pub monotone: MonotoneRoot,
    pub class: LocalClass,
}

impl BrieskornParams {
    pub fn new(a1: u64, a2: u64, a3: u64) -> Result<Self, BrieskornError> {
        let mut a = [a1, a2, a3];
        a.sort_unstable();
        let coprime = a[0].gcd(&a[1]) == 1 && a[0].gcd(&a[2]) == 1 && a[1].gcd(&a[2]) == 1;
        if a[0] < 2 || !coprime {
            return Err(BrieskornError::NotCoprime(a1, a2, a3));
        }
        Ok(BrieskornParams { a })
    }

    pub fn values(&self) -> [u64; 3] {
        self.a
    }

    fn ints(&self) -> [i64; 3] {
        self.a.map(|x| x as i64)
    }

    /// `ω_i = -(n/α_i)⁻¹ mod α_i` and `e0 = (-1 - Σ ω_i n/α_i) / n`, `n = α_1 α_2 α_3`.
    pub fn seifert(&self) -> SeifertInvariants {
        let al = self.ints();
        let n: i128 = al.iter().map(|&x| x as i128).product();
        let mut s: i128 = 0;
        let mut fibers = Vec::new();
        for &a in &al {
            let m = (n / a as i128) as i64;
            let inv = mod_inverse(m.rem_euclid(a), a);
            let w = (-inv).rem_euclid(a);
            s += w as i128 * (n / a as i128);
            fibers.push((a, w));
        }
        let e0 = (-1 - s) / n;
        debug_assert_eq!((-1 - s) % n, 0);
        SeifertInvariants { e0: e0 as i64, fibers }
    }

    /// Central vertex `e0` and one leg per fiber from the continued fraction of `α/ω`.
    pub fn plumbing(&self) -> PlumbingGraph {
        let s = self.seifert();
        let mut weights = vec![s.e0];
        let mut edges = Vec::new();
        for &(a, w) in &s.fibers {
            let mut prev = 0;
            for b in continued_fraction(a, w) {
                weights.push(-b);
                edges.push((prev, weights.len() - 1));
                prev = weights.len() - 1;
            }
        }
        PlumbingGraph::new(weights, edges).expect("legs attached to the centre form a tree")
    }

    fn span(&self) -> i64 {
        let [p, q, r] = self.ints();
        p * q * r - p * q - q * r - p * r
    }

    /// `τ(0) = 0`, `τ(n+1) = τ(n) + Δ(n)` with `Δ(n) = 1` on the semigroup,
    /// `-1` on its reflection `N0 - n`, `0` otherwise.
    pub fn tau(&self) -> Result<Vec<i64>, BrieskornError> {
        let [p, q, r] = self.ints();
        let n0 = self.span();
        if n0 > MAX_SEMIGROUP_SPAN {
            return Err(BrieskornError::TooLarge(self.a[0], self.a[1], self.a[2], n0));
        }
        if n0 < 0 {
            return Ok(vec![0]);
        }
        let len = n0 as usize + 1;
        let gens = [p * q, p * r, q * r].map(|g| g as usize);
        let mut in_g = vec![false; len];
        in_g[0] = true;
        for i in 1..len {
            in_g[i] = gens.iter().any(|&g| i >= g && in_g[i - g]);
        }
        let mut t = Vec::with_capacity(len + 1);
        t.push(0);
        for i in 0..len {
            let step = if in_g[i] {
                1
            } else if in_g[len - 1 - i] {
                -1
            } else {
                0
            };
            t.push(t[i] + step);
        }
        Ok(t)
    }

    /// `(K² + s) / 4 - 2 min τ`.
    pub fn d_invariant(&self) -> Result<Q, BrieskornError> {
        let g = self.plumbing();
        let k2 = g.k_squared()?;
        let min = *self.tau()?.iter().min().unwrap();
        let val = (k2 + num_rational::Ratio::from_integer(g.len() as i128)) / num_rational::Ratio::from_integer(4)
            - num_rational::Ratio::from_integer(2 * min as i128);
        let (n, d) = (val.numer().to_i64(), val.denom().to_i64());
        match (n, d) {
            (Some(n), Some(1)) => Ok(q(n)),
            _ => Err(BrieskornError::NonIntegral(val.to_string())),
        }
    }

    /// Graded root in the `HF⁻` convention (top `d - 2`).
    pub fn hf_minus_profile(&self) -> Result<SymmetricRootProfile, BrieskornError> {
        let p = self.h_profile()?;
        Ok(SymmetricRootProfile::new(p.profile().shifted(q(-2)))?)
    }

    /// Graded root with leaves at `d + 2(min τ - τ)` over the local minima of `τ`
    /// and angles at the maxima between consecutive minima.
    pub fn h_profile(&self) -> Result<SymmetricRootProfile, BrieskornError> {
        let t = self.tau()?;
        let d = self.d_invariant()?;
        let min = *t.iter().min().unwrap();
        let mut runs: Vec<i64> = Vec::new();
        for &x in &t {
            if runs.last() != Some(&x) {
                runs.push(x);
            }
        }
        let ext: Vec<i64> = runs
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == 0 || i + 1 == runs.len() || (x - runs[i - 1]) * (runs[i + 1] - x) < 0)
            .map(|(_, &x)| x)
            .collect();
        let is_min =
            |i: usize| (i == 0 || ext[i - 1] > ext[i]) && (i + 1 == ext.len() || ext[i + 1] > ext[i]);
        let mins: Vec<usize> = (0..ext.len()).filter(|&i| is_min(i)).collect();
        let level = |x: i64| d + q(2 * (min - x));
        let leaves = mins.iter().map(|&i| level(ext[i])).collect();
        let angles = mins.windows(2).map(|w| level(*ext[w[0]..=w[1]].iter().max().unwrap())).collect();
        Ok(SymmetricRootProfile::new(RootProfile::new(leaves, angles))?)
    }

    pub fn root(&self) -> Result<BrieskornRoot, BrieskornError> {
        let profile = self.h_profile()?;
        let monotone = MonotoneRoot::extract(&profile);
        let class = monotone.decompose();
        Ok(BrieskornRoot { params: *self, d: self.d_invariant()?, profile, monotone, class })
    }
}

impl fmt::Display for BrieskornParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sigma({},{},{})", self.a[0], self.a[1], self.a[2])
    }
}

/// `a/w = b_1 - 1/(b_2 - ...)` with every `b_i >= 2`.
fn continued_fraction(mut a: i64, mut w: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while w != 0 {
        let b = Integer::div_ceil(&a, &w);
        out.push(b);
        (a, w) = (w, b * w - a);
    }
    out
}

fn mod_inverse(x: i64, m: i64) -> i64 {
    let e = (x as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as i64
}

/// Convenience wrapper for the whole pipeline.
pub fn brieskorn_class(a1: u64, a2: u64, a3: u64) -> Result<BrieskornRoot, BrieskornError> {
    BrieskornParams::new(a1, a2, a3)?.root()
}
