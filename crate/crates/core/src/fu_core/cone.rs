//! Mapping cone `C --Q(1+ι)--> Q·C[-1]`, homology ranks, and `(d, d̄, d̲)`.
//!
//! Cone gradings: an undecorated generator sits one above its chain grading,
//! a `Q`-decorated one at its chain grading. The `d̄`-tower is the one in the
//! tower parity of `C`; `d̲` is read from the other parity and lowered by one,
//! so the trivial complex gives `(0, 0, 0)`.

use std::collections::BTreeMap;

use super::chain::{parity, Chain};
use super::{compose, truncate_cols, ComplexError, Homog, IotaComplex};
use crate::gf2::BitVec;
use crate::rational::{as_int, fmt_q, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Terms {
    #[serde(with = "crate::rational::serde_q")]
    pub d: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub d_bar: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub d_under: Q,
}

impl std::fmt::Display for Terms {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(d={}, d̄={}, d̲={})", fmt_q(&self.d), fmt_q(&self.d_bar), fmt_q(&self.d_under))
    }
}

/// A cone generator: `gen` of the underlying complex, with or without `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConeGen {
    pub gen: usize,
    pub q: bool,
}

impl ConeGen {
    pub fn plain(gen: usize) -> Self {
        ConeGen { gen, q: false }
    }

    pub fn with_q(gen: usize) -> Self {
        ConeGen { gen, q: true }
    }
}

/// A homogeneous element of the truncated cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    pub grading: Q,
    int_grading: i64,
    coords: BitVec,
}

#[derive(Clone, Debug)]
pub struct ConeComplex {
    pub base: IotaComplex,
    chain: Chain,
}

pub(crate) fn cone_chain(h: &Homog) -> Chain {
    let n = h.gr.len();
    let mut gr: Vec<i64> = h.gr.iter().map(|g| g + 1).collect();
    gr.extend(h.gr.iter().copied());
    let mut d = vec![Vec::new(); 2 * n];
    for j in 0..n {
        let mut col: Vec<usize> = h.d[j].clone();
        let mut qpart = vec![false; n];
        qpart[j] = true;
        for &i in &h.iota[j] {
            qpart[i] ^= true;
        }
        col.extend((0..n).filter(|&i| qpart[i]).map(|i| n + i));
        d[j] = col;
        d[n + j] = h.d[j].iter().map(|&i| n + i).collect();
    }
    Chain { gr, d, n: h.n }
}

fn ranks_in_window(
    build: impl Fn(u32) -> Result<Chain, ComplexError>,
    n: u32,
    tau: Q,
    lo: Q,
    hi: Q,
) -> Result<BTreeMap<Q, usize>, ComplexError> {
    let to_int = |x: Q| {
        as_int(&(x - tau)).ok_or_else(|| {
            ComplexError::Invalid(format!("window end {} is not in the coset {} + Z", fmt_q(&x), fmt_q(&tau)))
        })
    };
    let (lo_i, hi_i) = (to_int(lo)?, to_int(hi)?);
    let c = build(n)?;
    if lo_i < c.stable_low() {
        return Err(ComplexError::Window {
            low: fmt_q(&lo),
            high: fmt_q(&hi),
            stable_low: fmt_q(&(tau + q(c.stable_low()))),
        });
    }
    let c2 = build(n + 2)?;
    let mut out = BTreeMap::new();
    for g in lo_i..=hi_i {
        let r = c.rank(g);
        if r != c2.rank(g) {
            return Err(ComplexError::Unstable {
                truncation: n,
                detail: format!("rank at grading {} changes between N and N+2", fmt_q(&(tau + q(g)))),
            });
        }
        out.insert(tau + q(g), r);
    }
    Ok(out)
}

impl IotaComplex {
    pub fn mapping_cone(&self) -> Result<ConeComplex, ComplexError> {
        let h = self.homog()?;
        Ok(ConeComplex { base: self.clone(), chain: cone_chain(&h) })
    }

    /// GF(2) dimension of `H_g` for every grading `g` of the coset in `[lo, hi]`.
    /// Refuses windows that reach below the truncation-stable range.
    pub fn homology_ranks(&self, lo: Q, hi: Q) -> Result<BTreeMap<Q, usize>, ComplexError> {
        ranks_in_window(|n| Ok(self.homog_at(n)?.chain()), self.truncation, self.tau, lo, hi)
    }

    fn terms_at(&self, n: u32) -> Result<Terms, ComplexError> {
        let h = self.homog_at(n)?;
        let c = h.chain();
        let p = c.tower_parity()?;
        let d = c.top_nontorsion(p)?.expect("the tower test grading carries the tower");
        let k = cone_chain(&h);
        for par in [p, 1 - p] {
            let r = k.rank(k.low_grading(par)?);
            if r != 1 {
                return Err(ComplexError::Invalid(format!(
                    "mapping cone has rank {r} in low gradings of parity {par}, expected 1"
                )));
            }
        }
        let d_bar = k.top_nontorsion(p)?.expect("tower present");
        let d_under = k.top_nontorsion(1 - p)?.expect("tower present") - 1;
        Ok(Terms { d: self.tau + q(d), d_bar: self.tau + q(d_bar), d_under: self.tau + q(d_under) })
    }

    /// `(d, d̄, d̲)`, computed at truncation `N` and again at `N + 2`.
    pub fn correction_terms(&self) -> Result<Terms, ComplexError> {
        let a = self.terms_at(self.truncation)?;
        let b = self.terms_at(self.truncation + 2)?;
        if a != b {
            return Err(ComplexError::Unstable {
                truncation: self.truncation,
                detail: format!("{a} at N but {b} at N+2"),
            });
        }
        Ok(a)
    }
}

impl ConeComplex {
    pub fn len(&self) -> usize {
        2 * self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    fn index(&self, g: ConeGen) -> usize {
        g.gen + if g.q { self.base.len() } else { 0 }
    }

    pub fn grading(&self, g: ConeGen) -> Q {
        self.base.gradings[g.gen] + if g.q { q(0) } else { q(1) }
    }

    pub fn label(&self, g: ConeGen) -> String {
        if g.q {
            format!("Q{}", self.base.labels[g.gen])
        } else {
            self.base.labels[g.gen].clone()
        }
    }

    pub fn generators(&self) -> Vec<ConeGen> {
        let n = self.base.len();
        (0..n).map(ConeGen::plain).chain((0..n).map(ConeGen::with_q)).collect()
    }

    /// `∂_tot ∘ ∂_tot = 0` modulo `U^N`.
    pub fn squares_to_zero(&self) -> bool {
        let c = &self.chain;
        let mut dd = compose(&c.d, &c.d, c.gr.len());
        truncate_cols(&mut dd, &c.gr, &c.gr, -2, c.n);
        dd.iter().all(|x| x.is_empty())
    }

    pub fn homology_ranks(&self, lo: Q, hi: Q) -> Result<BTreeMap<Q, usize>, ComplexError> {
        let base = &self.base;
        ranks_in_window(|n| Ok(cone_chain(&base.homog_at(n)?)), base.truncation, base.tau, lo, hi)
    }

    /// Sum of the given generators, each multiplied by the power of `U` that
    /// brings it down to the lowest grading among them.
    pub fn homogenize(&self, terms: &[ConeGen]) -> Result<ConeElement, ComplexError> {
        let tau = self.base.tau;
        let ints: Vec<i64> = terms
            .iter()
            .map(|&t| self.chain.gr[self.index(t)])
            .collect();
        let Some(&g) = ints.iter().min() else {
            return Err(ComplexError::Invalid("empty element".into()));
        };
        if ints.iter().any(|x| parity(*x) != parity(g)) {
            return Err(ComplexError::Invalid("terms have gradings of different parity".into()));
        }
        let piece = self.chain.piece(g);
        let mut coords = BitVec::zeros(piece.len());
        for &t in terms {
            let k = piece.index(self.index(t)).ok_or_else(|| ComplexError::Unstable {
                truncation: self.chain.n as u32,
                detail: format!("{} vanishes after homogenizing", self.label(t)),
            })?;
            coords.flip(k);
        }
        Ok(ConeElement { grading: tau + q(g), int_grading: g, coords })
    }

    pub fn is_cycle(&self, x: &ConeElement) -> bool {
        self.chain.boundary_of(&x.coords, x.int_grading).is_zero()
    }

    pub fn is_zero(&self, x: &ConeElement) -> bool {
        x.coords.is_zero()
    }

    /// Whether every `U`-power of the cycle `x` is nonzero in homology.
    pub fn is_nontorsion(&self, x: &ConeElement) -> Result<bool, ComplexError> {
        self.chain.is_nontorsion(&x.coords, x.int_grading)
    }
}
