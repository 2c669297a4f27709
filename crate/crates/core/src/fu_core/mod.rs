//! Exact ι-complex engine over truncated `F[U]`, `F = GF(2)`, `deg U = -2`.
//!
//! Tensor products, duals, mapping cones, homology ranks, the correction
//! terms `(d, d̄, d̲)`, and the affine search for local maps. This is the
//! brute-force oracle that every closed-form result elsewhere in the crate
//! is checked against.
//!
//! Gradings are exact rationals. All gradings of one complex lie in a single
//! coset `tau + Z`; internally they are handled as integer offsets from `tau`.

mod chain;
mod cone;
mod local_map;
mod upoly;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::gf2::AffineSystem;
use crate::rational::{as_int, fmt_q, frac, parse_q, q, Q};
use chain::Chain;

pub use cone::{ConeComplex, ConeElement, ConeGen, Terms};
pub use local_map::{find_local_map, find_local_map_with_limit, locally_equivalent, verify_local_map, LocalMap};
pub use upoly::UPoly;

/// Sparse matrix keyed by `(row, col)`: entry `(i, j)` is the coefficient of
/// generator `i` in the image of generator `j`.
pub type Matrix = BTreeMap<(usize, usize), UPoly>;

/// Default ceiling on the number of unknowns in a local-map search.
pub const DEFAULT_MAP_LIMIT: usize = 40_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ComplexError {
    #[error("invalid complex: {0}")]
    Invalid(String),
    #[error("unstable at truncation N={truncation}: {detail}")]
    Unstable { truncation: u32, detail: String },
    #[error("window [{low}, {high}] leaves the stable range: lowest stable grading is {stable_low}")]
    Window { low: String, high: String, stable_low: String },
    #[error("local map search needs {unknowns} unknowns, above the limit {limit}")]
    TooLarge { unknowns: usize, limit: usize },
    #[error("gradings lie in different cosets mod 1 ({0} vs {1})")]
    CosetMismatch(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaComplex {
    pub labels: Vec<String>,
    pub gradings: Vec<Q>,
    pub differential: Matrix,
    pub iota: Matrix,
    /// Everything is computed modulo `U^truncation`.
    pub truncation: u32,
    /// Coset anchor in `[0, 1)`.
    pub tau: Q,
}

/// One line of a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub checks: Vec<Check>,
}

impl Diagnostics {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }

    pub(crate) fn push(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(Check { name, passed: witness.is_none(), witness });
    }
}

impl std::fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  ok    {}", c.name)?,
                Some(w) => writeln!(f, "  FAIL  {}: {}", c.name, w)?,
            }
        }
        Ok(())
    }
}

/// Homogeneous integer form of a complex at a fixed truncation.
#[derive(Clone, Debug)]
pub(crate) struct Homog {
    pub gr: Vec<i64>,
    pub d: Vec<Vec<usize>>,
    pub iota: Vec<Vec<usize>>,
    pub n: i64,
}

impl Homog {
    pub fn chain(&self) -> Chain {
        Chain { gr: self.gr.clone(), d: self.d.clone(), n: self.n }
    }
}

/// Truncation used when none is requested: half the grading span plus a margin of four.
pub fn policy_truncation(gradings: &[Q]) -> u32 {
    let (Some(mx), Some(mn)) = (gradings.iter().max(), gradings.iter().min()) else {
        return 4;
    };
    let span = (*mx - *mn) / q(2);
    span.ceil().to_integer() as u32 + 4
}

fn cols_of(m: &Matrix, len: usize) -> Vec<Vec<usize>> {
    let mut cols = vec![Vec::new(); len];
    for (&(i, j), p) in m {
        if !p.is_zero() {
            cols[j].push(i);
        }
    }
    cols
}

/// `a ∘ b` on bit patterns.
fn compose(a: &[Vec<usize>], b: &[Vec<usize>], rows: usize) -> Vec<Vec<usize>> {
    let mut acc = vec![false; rows];
    b.iter()
        .map(|bj| {
            acc.iter_mut().for_each(|x| *x = false);
            for &k in bj {
                for &i in &a[k] {
                    acc[i] ^= true;
                }
            }
            (0..rows).filter(|&i| acc[i]).collect()
        })
        .collect()
}

/// Drop entries whose implied exponent is at least `n`.
fn truncate_cols(cols: &mut [Vec<usize>], gr_out: &[i64], gr_in: &[i64], deg: i64, n: i64) {
    for (j, c) in cols.iter_mut().enumerate() {
        c.retain(|&i| (gr_out[i] - gr_in[j] - deg) / 2 < n);
    }
}

fn cols_equal(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<(usize, usize)> {
    for (j, (x, y)) in a.iter().zip(b).enumerate() {
        let mut x = x.clone();
        let mut y = y.clone();
        x.sort_unstable();
        y.sort_unstable();
        if x != y {
            let i = x.iter().chain(&y).find(|i| x.contains(i) != y.contains(i)).copied().unwrap_or(0);
            return Some((i, j));
        }
    }
    None
}

impl IotaComplex {
    /// Builds a complex with the policy truncation. No validation is done here.
    pub fn new(labels: Vec<String>, gradings: Vec<Q>, differential: Matrix, iota: Matrix) -> Self {
        let truncation = policy_truncation(&gradings);
        let tau = gradings.first().map(frac).unwrap_or_else(Q::zero);
        let mut c = IotaComplex { labels, gradings, differential, iota, truncation, tau };
        c.differential.retain(|_, p| !p.is_zero());
        c.iota.retain(|_, p| !p.is_zero());
        c
    }

    /// One generator in grading 0 with `∂ = 0` and `ι = id`: the unit class.
    pub fn trivial() -> Self {
        Self::tower(q(0))
    }

    /// A single tower whose top sits in grading `g`.
    pub fn tower(g: Q) -> Self {
        let mut iota = Matrix::new();
        iota.insert((0, 0), UPoly::one());
        Self::new(vec!["x".into()], vec![g], Matrix::new(), iota)
    }

    /// Spherical complex `S(d, n; Δ_1..Δ_n)` on the `J`-equivariant cell
    /// structure of the `n`-ball. Each `Δ_i` must be a non-negative even integer.
    pub fn spherical(d: Q, deltas: &[i64]) -> Result<Self, ComplexError> {
        if let Some(x) = deltas.iter().find(|&&x| x < 0 || x % 2 != 0) {
            return Err(ComplexError::Invalid(format!("spherical parameter {x} is not a non-negative even integer")));
        }
        let n = deltas.len();
        let idx = |i: usize, j: bool| if i == n { 2 * n } else { 2 * i + j as usize };
        let mut labels = Vec::new();
        let mut gradings = Vec::new();
        let mut sum = 0i64;
        for i in 0..=n {
            if i > 0 {
                sum += deltas[i - 1];
            }
            let g = d - q(sum) + q(i as i64);
            if i < n {
                labels.push(format!("e{i}"));
                labels.push(format!("Je{i}"));
                gradings.extend([g, g]);
            } else {
                labels.push(format!("e{i}"));
                gradings.push(g);
            }
        }
        let mut dm = Matrix::new();
        let mut iota = Matrix::new();
        for i in 0..n {
            iota.insert((idx(i, true), idx(i, false)), UPoly::one());
            iota.insert((idx(i, false), idx(i, true)), UPoly::one());
        }
        iota.insert((2 * n, 2 * n), UPoly::one());
        for i in 1..=n {
            let e = (deltas[i - 1] / 2) as u32;
            let cells: &[bool] = if i == n { &[false] } else { &[false, true] };
            for &j in cells {
                dm.insert((idx(i - 1, false), idx(i, j)), UPoly::monomial(e));
                dm.insert((idx(i - 1, true), idx(i, j)), UPoly::monomial(e));
            }
        }
        Ok(Self::new(labels, gradings, dm, iota))
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn with_truncation(mut self, n: u32) -> Self {
        self.truncation = n.max(1);
        self
    }

    pub fn with_policy_truncation(mut self) -> Self {
        self.truncation = policy_truncation(&self.gradings);
        self
    }

    pub fn max_grading(&self) -> Q {
        self.gradings.iter().copied().max().unwrap_or_else(Q::zero)
    }

    pub fn min_grading(&self) -> Q {
        self.gradings.iter().copied().min().unwrap_or_else(Q::zero)
    }

    pub(crate) fn int_gradings(&self) -> Result<Vec<i64>, ComplexError> {
        self.gradings
            .iter()
            .enumerate()
            .map(|(i, g)| {
                as_int(&(*g - self.tau)).ok_or_else(|| {
                    ComplexError::Invalid(format!(
                        "generator {} has grading {} outside the coset {} + Z",
                        self.labels[i],
                        fmt_q(g),
                        fmt_q(&self.tau)
                    ))
                })
            })
            .collect()
    }

    fn degree_witness(&self, m: &Matrix, gr: &[i64], deg: i64, what: &str) -> Option<String> {
        let n = self.len();
        for (&(i, j), p) in m {
            if i >= n || j >= n {
                return Some(format!("{what} entry ({i},{j}) is out of range for {n} generators"));
            }
            for &e in p.exponents() {
                if gr[i] - 2 * e as i64 != gr[j] + deg {
                    return Some(format!(
                        "{what}: U^{e} {} in the image of {} has grading {}, expected {}",
                        self.labels[i],
                        self.labels[j],
                        fmt_q(&(self.gradings[i] - q(2 * e as i64))),
                        fmt_q(&(self.gradings[j] + q(deg)))
                    ));
                }
            }
        }
        None
    }

    /// Integer form at truncation `n`, after degree checks.
    pub(crate) fn homog_at(&self, n: u32) -> Result<Homog, ComplexError> {
        let gr = self.int_gradings()?;
        if let Some(w) = self.degree_witness(&self.differential, &gr, -1, "differential") {
            return Err(ComplexError::Invalid(w));
        }
        if let Some(w) = self.degree_witness(&self.iota, &gr, 0, "iota") {
            return Err(ComplexError::Invalid(w));
        }
        let n = n as i64;
        let mut d = cols_of(&self.differential, self.len());
        let mut iota = cols_of(&self.iota, self.len());
        truncate_cols(&mut d, &gr, &gr, -1, n);
        truncate_cols(&mut iota, &gr, &gr, 0, n);
        Ok(Homog { gr, d, iota, n })
    }

    pub(crate) fn homog(&self) -> Result<Homog, ComplexError> {
        self.homog_at(self.truncation)
    }

    /// Checks every ι-complex axiom at the stored truncation.
    pub fn validate(&self) -> Diagnostics {
        let mut diag = Diagnostics::default();
        if self.is_empty() {
            diag.push("nonempty", Some("complex has no generators".into()));
            return diag;
        }
        let gr = match self.int_gradings() {
            Ok(g) => {
                diag.push("coset", None);
                g
            }
            Err(e) => {
                diag.push("coset", Some(e.to_string()));
                return diag;
            }
        };
        let wd = self.degree_witness(&self.differential, &gr, -1, "differential");
        let wi = self.degree_witness(&self.iota, &gr, 0, "iota");
        let bad = wd.is_some() || wi.is_some();
        diag.push("degree_d", wd);
        diag.push("degree_iota", wi);
        if bad {
            return diag;
        }
        let h = self.homog().expect("degrees checked");
        let len = self.len();
        let mut dd = compose(&h.d, &h.d, len);
        truncate_cols(&mut dd, &gr, &gr, -2, h.n);
        let wdd = dd.iter().enumerate().find(|(_, c)| !c.is_empty()).map(|(j, c)| {
            format!("∂∂({}) contains {}", self.labels[j], self.labels[c[0]])
        });
        let not_complex = wdd.is_some();
        diag.push("d_squared", wdd);
        if not_complex {
            return diag;
        }
        let mut id_ = compose(&h.iota, &h.d, len);
        let mut di = compose(&h.d, &h.iota, len);
        truncate_cols(&mut id_, &gr, &gr, -1, h.n);
        truncate_cols(&mut di, &gr, &gr, -1, h.n);
        diag.push(
            "iota_commutes",
            cols_equal(&id_, &di).map(|(i, j)| {
                format!("ι∂ and ∂ι differ at ({}, {})", self.labels[i], self.labels[j])
            }),
        );
        diag.push("iota_squared_homotopic", self.iota_squared_witness(&h));
        let tower = h.chain().tower_parity().err().map(|e| e.to_string());
        diag.push("single_tower", tower);
        diag
    }

    /// `None` when `ι² ≃ id`; the homotopy is found by an affine solve.
    fn iota_squared_witness(&self, h: &Homog) -> Option<String> {
        let len = self.len();
        let mut sq = compose(&h.iota, &h.iota, len);
        truncate_cols(&mut sq, &h.gr, &h.gr, 0, h.n);
        let id: Vec<Vec<usize>> = (0..len).map(|j| vec![j]).collect();
        cols_equal(&sq, &id)?;
        let ok = |i: usize, j: usize, deg: i64| {
            let e = h.gr[i] - h.gr[j] - deg;
            e >= 0 && e % 2 == 0 && e / 2 < h.n
        };
        let mut var = vec![usize::MAX; len * len];
        let mut count = 0;
        for i in 0..len {
            for j in 0..len {
                if ok(i, j, 1) {
                    var[i * len + j] = count;
                    count += 1;
                }
            }
        }
        let mut rows_d = vec![Vec::new(); len];
        for (j, c) in h.d.iter().enumerate() {
            for &i in c {
                rows_d[i].push(j);
            }
        }
        let mut sys = AffineSystem::new(count);
        for j in 0..len {
            // column j of ι² + id
            let mut target = vec![false; len];
            target[j] = true;
            for &i in &sq[j] {
                target[i] ^= true;
            }
            for i in 0..len {
                if !ok(i, j, 0) {
                    continue;
                }
                let mut vars = Vec::new();
                for &k in &rows_d[i] {
                    if var[k * len + j] != usize::MAX {
                        vars.push(var[k * len + j]);
                    }
                }
                for &k in &h.d[j] {
                    if var[i * len + k] != usize::MAX {
                        vars.push(var[i * len + k]);
                    }
                }
                sys.push(vars, target[i]);
            }
        }
        match sys.solve() {
            Some(_) => None,
            None => Some("no degree +1 map H solves ∂H + H∂ = ι² + id".into()),
        }
    }

    /// Convenience: `Ok(self)` when every axiom holds.
    pub fn validated(self) -> Result<Self, ComplexError> {
        let d = self.validate();
        if d.ok() {
            Ok(self)
        } else {
            Err(ComplexError::Invalid(
                d.failures().iter().map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())).collect::<Vec<_>>().join("; "),
            ))
        }
    }

    /// Tensor product over `F[U]`, with `ι = ι_a ⊗ ι_b` and no grading shift.
    /// Truncation is the smaller of the two, raised to the policy value of the product.
    pub fn tensor(&self, other: &IotaComplex) -> IotaComplex {
        let nb = other.len();
        let ix = |i: usize, k: usize| i * nb + k;
        let mut labels = Vec::with_capacity(self.len() * nb);
        let mut gradings = Vec::with_capacity(self.len() * nb);
        for i in 0..self.len() {
            for k in 0..nb {
                labels.push(format!("{}*{}", self.labels[i], other.labels[k]));
                gradings.push(self.gradings[i] + other.gradings[k]);
            }
        }
        let mut d = Matrix::new();
        let add = |m: &mut Matrix, key: (usize, usize), p: &UPoly| {
            let e = m.entry(key).or_default();
            *e = e.add(p);
        };
        for (&(r, i), p) in &self.differential {
            for k in 0..nb {
                add(&mut d, (ix(r, k), ix(i, k)), p);
            }
        }
        for (&(s, k), p) in &other.differential {
            for i in 0..self.len() {
                add(&mut d, (ix(i, s), ix(i, k)), p);
            }
        }
        let mut iota = Matrix::new();
        for (&(r, i), p) in &self.iota {
            for (&(s, k), p2) in &other.iota {
                add(&mut iota, (ix(r, s), ix(i, k)), &p.mul(p2));
            }
        }
        let mut c = IotaComplex::new(labels, gradings, d, iota);
        // never below the policy value of the product
        c.truncation = self.truncation.min(other.truncation).max(c.truncation);
        c
    }

    /// `Hom(C, F[U])`: transposed maps and negated gradings.
    pub fn dual(&self) -> IotaComplex {
        let t = |m: &Matrix| m.iter().map(|(&(i, j), p)| ((j, i), p.clone())).collect::<Matrix>();
        let labels = self.labels.iter().map(|l| format!("{l}^")).collect();
        let gradings = self.gradings.iter().map(|g| -*g).collect();
        let mut c = IotaComplex::new(labels, gradings, t(&self.differential), t(&self.iota));
        c.truncation = self.truncation;
        c
    }

    /// Relabels generator `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> IotaComplex {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        let mut gradings = vec![Q::zero(); n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            gradings[perm[i]] = self.gradings[i];
        }
        let m = |m: &Matrix| m.iter().map(|(&(i, j), p)| ((perm[i], perm[j]), p.clone())).collect();
        IotaComplex {
            labels,
            gradings,
            differential: m(&self.differential),
            iota: m(&self.iota),
            truncation: self.truncation,
            tau: self.tau,
        }
    }

    /// Same gradings and maps, ignoring labels.
    pub fn same_structure(&self, other: &IotaComplex) -> bool {
        self.gradings == other.gradings && self.differential == other.differential && self.iota == other.iota
    }

    pub fn to_json(&self) -> ComplexJson {
        let entries = |m: &Matrix| {
            m.iter()
                .map(|(&(row, col), p)| EntryJson { row, col, exponents: p.exponents().to_vec() })
                .collect()
        };
        ComplexJson {
            generators: self
                .labels
                .iter()
                .zip(&self.gradings)
                .map(|(l, g)| GeneratorJson { label: l.clone(), grading: fmt_q(g) })
                .collect(),
            differential: entries(&self.differential),
            iota: entries(&self.iota),
            truncation: self.truncation,
            tau: fmt_q(&self.tau),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self, ComplexError> {
        let mut gradings = Vec::new();
        for g in &j.generators {
            gradings.push(parse_q(&g.grading).map_err(ComplexError::Invalid)?);
        }
        let m = |es: &[EntryJson]| {
            es.iter()
                .map(|e| ((e.row, e.col), UPoly::from_exponents(e.exponents.iter().copied())))
                .collect::<Matrix>()
        };
        let mut c = IotaComplex::new(
            j.generators.iter().map(|g| g.label.clone()).collect(),
            gradings,
            m(&j.differential),
            m(&j.iota),
        );
        c.truncation = j.truncation;
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub grading: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub exponents: Vec<u32>,
}

/// Debug dump of a complex (`--dump-complex`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub generators: Vec<GeneratorJson>,
    pub differential: Vec<EntryJson>,
    pub iota: Vec<EntryJson>,
    pub truncation: u32,
    pub tau: String,
}
