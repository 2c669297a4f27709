//! Local maps between ι-complexes as solutions of one affine GF(2) system.
//!
//! Unknowns are the bits of a degree-0 map `F` and a degree-(+1) homotopy `H`;
//! each matrix entry has a single possible exponent, so one bit per pair of
//! generators. Equations:
//!
//! ```text
//!   ∂'F + F∂ = 0
//!   Fι + ι'F + ∂'H + H∂ = 0
//!   ψ(F(z)) = 1
//! ```
//!
//! where `z` is a cycle carrying the tower of the source in a low grading and
//! `ψ` is a functional that kills boundaries of the target and is 1 on its
//! tower cycle. At the chosen truncation every entry of every product is
//! representable and the system is exact over `F[U]`.

use super::chain::{parity, Chain};
use super::{ComplexError, IotaComplex, Matrix, UPoly, DEFAULT_MAP_LIMIT};
use crate::gf2::{AffineSystem, BitVec};
use crate::rational::fmt_q;

/// Witness for a local map: `f` is the chain map, `h` the homotopy between
/// `f ι` and `ι' f`. Rows index the target, columns the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMap {
    pub f: Matrix,
    pub h: Matrix,
}

struct Setup {
    ga: Vec<i64>,
    gb: Vec<i64>,
    ca: Chain,
    cb: Chain,
    ia: Vec<Vec<usize>>,
    ib: Vec<Vec<usize>>,
    low: i64,
    n: i64,
}

fn setup(a: &IotaComplex, b: &IotaComplex) -> Result<Option<Setup>, ComplexError> {
    if a.tau != b.tau {
        return Err(ComplexError::CosetMismatch(fmt_q(&a.tau), fmt_q(&b.tau)));
    }
    let ga = a.int_gradings()?;
    let gb = b.int_gradings()?;
    let mx = ga.iter().chain(&gb).copied().max().unwrap_or(0);
    let mn = ga.iter().chain(&gb).copied().min().unwrap_or(0);
    let n = (mx - mn + 1) / 2 + 4;
    let ha = a.homog_at(n as u32)?;
    let hb = b.homog_at(n as u32)?;
    let (ca, cb) = (ha.chain(), hb.chain());
    let p = ca.tower_parity()?;
    if cb.tower_parity()? != p {
        return Ok(None);
    }
    let low = if parity(mn) == p { mn } else { mn - 1 };
    debug_assert!(low >= ca.stable_low() && low >= cb.stable_low());
    Ok(Some(Setup { ga, gb, ca, cb, ia: ha.iota, ib: hb.iota, low, n }))
}

fn rows_of(cols: &[Vec<usize>], rows: usize) -> Vec<Vec<usize>> {
    let mut r = vec![Vec::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c {
            r[i].push(j);
        }
    }
    r
}

pub fn find_local_map(a: &IotaComplex, b: &IotaComplex) -> Result<Option<LocalMap>, ComplexError> {
    find_local_map_with_limit(a, b, DEFAULT_MAP_LIMIT)
}

pub fn find_local_map_with_limit(
    a: &IotaComplex,
    b: &IotaComplex,
    limit: usize,
) -> Result<Option<LocalMap>, ComplexError> {
    let Some(s) = setup(a, b)? else {
        return Ok(None);
    };
    let (na, nb) = (a.len(), b.len());
    let exp = |i: usize, j: usize, deg: i64| {
        let e = s.gb[i] - s.ga[j] - deg;
        (e >= 0 && e % 2 == 0 && e / 2 < s.n).then_some(e / 2)
    };

    let mut fvar = vec![usize::MAX; nb * na];
    let mut hvar = vec![usize::MAX; nb * na];
    let mut count = 0;
    for i in 0..nb {
        for j in 0..na {
            if exp(i, j, 0).is_some() {
                fvar[i * na + j] = count;
                count += 1;
            }
            if exp(i, j, 1).is_some() {
                hvar[i * na + j] = count;
                count += 1;
            }
        }
    }
    if count > limit {
        return Err(ComplexError::TooLarge { unknowns: count, limit });
    }
    let f = |i: usize, j: usize| Some(fvar[i * na + j]).filter(|&v| v != usize::MAX);
    let h = |i: usize, j: usize| Some(hvar[i * na + j]).filter(|&v| v != usize::MAX);
    let db_rows = rows_of(&s.cb.d, nb);
    let ib_rows = rows_of(&s.ib, nb);

    let mut sys = AffineSystem::new(count);
    for i in 0..nb {
        for j in 0..na {
            if exp(i, j, -1).is_some() {
                let vars = db_rows[i]
                    .iter()
                    .filter_map(|&k| f(k, j))
                    .chain(s.ca.d[j].iter().filter_map(|&k| f(i, k)));
                sys.push(vars.collect::<Vec<_>>(), false);
            }
            if exp(i, j, 0).is_some() {
                let vars = s.ia[j]
                    .iter()
                    .filter_map(|&k| f(i, k))
                    .chain(ib_rows[i].iter().filter_map(|&k| f(k, j)))
                    .chain(db_rows[i].iter().filter_map(|&k| h(k, j)))
                    .chain(s.ca.d[j].iter().filter_map(|&k| h(i, k)));
                sys.push(vars.collect::<Vec<_>>(), false);
            }
        }
    }

    let za = s.ca.tower_cycle(s.low).expect("tower present at the low grading");
    let Some(psi) = tower_functional(&s.cb, s.low) else {
        return Ok(None);
    };
    let pa = s.ca.piece(s.low);
    let pb = s.cb.piece(s.low);
    let mut pin = Vec::new();
    for sa in za.ones() {
        for tb in psi.ones() {
            if let Some(v) = f(pb.gens[tb], pa.gens[sa]) {
                pin.push(v);
            }
        }
    }
    sys.push(pin, true);

    let Some(x) = sys.solve() else {
        return Ok(None);
    };
    let mut fm = Matrix::new();
    let mut hm = Matrix::new();
    for i in 0..nb {
        for j in 0..na {
            if f(i, j).is_some_and(|v| x.get(v)) {
                fm.insert((i, j), UPoly::monomial(exp(i, j, 0).unwrap() as u32));
            }
            if h(i, j).is_some_and(|v| x.get(v)) {
                hm.insert((i, j), UPoly::monomial(exp(i, j, 1).unwrap() as u32));
            }
        }
    }
    Ok(Some(LocalMap { f: fm, h: hm }))
}

/// A functional on the grading-`g` piece vanishing on boundaries and equal
/// to 1 on the tower cycle.
fn tower_functional(c: &Chain, g: i64) -> Option<BitVec> {
    let z = c.tower_cycle(g)?;
    let cols = c.boundary_columns(g);
    let len = c.piece(g).len();
    let mut sys = AffineSystem::new(len);
    for col in &cols {
        sys.push(col.ones().collect::<Vec<_>>(), false);
    }
    sys.push(z.ones().collect::<Vec<_>>(), true);
    sys.solve()
}

/// Both directions exist.
pub fn locally_equivalent(a: &IotaComplex, b: &IotaComplex) -> Result<bool, ComplexError> {
    Ok(find_local_map(a, b)?.is_some() && find_local_map(b, a)?.is_some())
}

fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let mut out = Matrix::new();
    for (&(i, k), p) in x {
        for (&(k2, j), p2) in y.range((k, 0)..(k + 1, 0)) {
            debug_assert_eq!(k, k2);
            let e = out.entry((i, j)).or_default();
            *e = e.add(&p.mul(p2));
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn mat_add(x: &Matrix, y: &Matrix) -> Matrix {
    let mut out = x.clone();
    for (k, p) in y {
        let e = out.entry(*k).or_default();
        *e = e.add(p);
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Re-checks a witness with exact polynomial arithmetic, independent of the solver.
pub fn verify_local_map(a: &IotaComplex, b: &IotaComplex, m: &LocalMap) -> Result<bool, ComplexError> {
    let chain_ok = mat_add(&mat_mul(&b.differential, &m.f), &mat_mul(&m.f, &a.differential)).is_empty();
    let homotopy_ok = mat_add(
        &mat_add(&mat_mul(&m.f, &a.iota), &mat_mul(&b.iota, &m.f)),
        &mat_add(&mat_mul(&b.differential, &m.h), &mat_mul(&m.h, &a.differential)),
    )
    .is_empty();
    if !(chain_ok && homotopy_ok) {
        return Ok(false);
    }
    let Some(s) = setup(a, b)? else {
        return Ok(false);
    };
    let za = s.ca.tower_cycle(s.low).expect("tower present");
    let pa = s.ca.piece(s.low);
    let pb = s.cb.piece(s.low);
    let mut img = BitVec::zeros(pb.len());
    for sa in za.ones() {
        let j = pa.gens[sa];
        for (&(i, _), _) in m.f.iter().filter(|((_, c), _)| *c == j) {
            if let Some(t) = pb.index(i) {
                img.flip(t);
            }
        }
    }
    if !s.cb.boundary_of(&img, s.low).is_zero() {
        return Ok(false);
    }
    Ok(!s.cb.boundaries(s.low).contains(&img))
}
