//! Graded pieces of a free complex over F[U]/U^n.
//!
//! Every map in the engine is homogeneous, so a matrix entry is a single
//! monomial whose exponent is fixed by the gradings of its row and column.
//! A map is stored as a bit pattern (column lists), and the piece
//! of the complex in grading `g` has one basis vector `U^e x_j` for each
//! generator with `gr(x_j) - 2e = g`, `0 <= e < n`.

use super::ComplexError;
use crate::gf2::{kernel, BitVec, Echelon};

#[derive(Clone, Debug)]
pub(crate) struct Chain {
    /// Integer gradings (offsets from the coset anchor).
    pub gr: Vec<i64>,
    /// Column `j` lists the rows `i` with a nonzero entry in `d(x_j)`.
    pub d: Vec<Vec<usize>>,
    pub n: i64,
}

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub gens: Vec<usize>,
    pos: Vec<usize>,
}

impl Piece {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn index(&self, j: usize) -> Option<usize> {
        match self.pos[j] {
            usize::MAX => None,
            k => Some(k),
        }
    }
}

pub(crate) fn parity(g: i64) -> i64 {
    g.rem_euclid(2)
}

impl Chain {
    pub fn max_gr(&self) -> i64 {
        self.gr.iter().copied().max().unwrap_or(0)
    }

    pub fn min_gr(&self) -> i64 {
        self.gr.iter().copied().min().unwrap_or(0)
    }

    /// Lowest grading at which the truncated homology agrees with the
    /// untruncated one.
    pub fn stable_low(&self) -> i64 {
        self.max_gr() - 2 * self.n + 2
    }

    pub fn piece(&self, g: i64) -> Piece {
        let mut pos = vec![usize::MAX; self.gr.len()];
        let mut gens = Vec::new();
        for (j, &h) in self.gr.iter().enumerate() {
            let diff = h - g;
            if diff >= 0 && diff % 2 == 0 && diff < 2 * self.n {
                pos[j] = gens.len();
                gens.push(j);
            }
        }
        Piece { gens, pos }
    }

    /// The differential from grading `g` to `g - 1`, as columns over the target piece.
    pub fn dmat(&self, g: i64) -> (Piece, Piece, Vec<BitVec>) {
        let src = self.piece(g);
        let tgt = self.piece(g - 1);
        let cols = src
            .gens
            .iter()
            .map(|&j| BitVec::from_ones(tgt.len(), self.d[j].iter().filter_map(|&i| tgt.index(i))))
            .collect();
        (src, tgt, cols)
    }

    pub fn boundary_of(&self, v: &BitVec, g: i64) -> BitVec {
        let (_, tgt, cols) = self.dmat(g);
        crate::gf2::apply(&cols, tgt.len(), v)
    }

    pub fn boundaries(&self, g: i64) -> Echelon {
        let (_, _, cols) = self.dmat(g + 1);
        let mut e = Echelon::new();
        for c in cols {
            e.insert(c);
        }
        e
    }

    pub fn boundary_columns(&self, g: i64) -> Vec<BitVec> {
        self.dmat(g + 1).2
    }

    pub fn cycles(&self, g: i64) -> Vec<BitVec> {
        kernel(&self.dmat(g).2)
    }

    pub fn rank(&self, g: i64) -> usize {
        let z = self.cycles(g).len();
        z.saturating_sub(self.boundaries(g).rank())
    }

    /// Multiplication by `U^k` from grading `g` to `g - 2k`.
    pub fn lower(&self, v: &BitVec, g: i64, to: i64) -> BitVec {
        debug_assert!(to <= g && (g - to) % 2 == 0);
        let src = self.piece(g);
        let tgt = self.piece(to);
        BitVec::from_ones(tgt.len(), v.ones().filter_map(|k| tgt.index(src.gens[k])))
    }

    /// Largest grading of the given parity that lies at or below every generator.
    pub fn low_grading(&self, par: i64) -> Result<i64, ComplexError> {
        let m = self.min_gr();
        let g = if parity(m) == par { m } else { m - 1 };
        if g < self.stable_low() {
            return Err(ComplexError::Unstable {
                truncation: self.n as u32,
                detail: format!(
                    "tower grading {g} lies below the stable range (>= {}); raise the truncation",
                    self.stable_low()
                ),
            });
        }
        Ok(g)
    }

    /// Parity of the unique U-nontorsion tower.
    pub fn tower_parity(&self) -> Result<i64, ComplexError> {
        let r0 = self.rank(self.low_grading(0)?);
        let r1 = self.rank(self.low_grading(1)?);
        match (r0, r1) {
            (1, 0) => Ok(0),
            (0, 1) => Ok(1),
            _ => Err(ComplexError::Invalid(format!(
                "homology after inverting U has rank {} (even) + {} (odd), expected a single tower",
                r0, r1
            ))),
        }
    }

    /// First cycle (in reduced-echelon order) that is not a boundary.
    pub fn tower_cycle(&self, g: i64) -> Option<BitVec> {
        let b = self.boundaries(g);
        self.cycles(g).into_iter().find(|z| !b.contains(z))
    }

    pub fn is_nontorsion(&self, v: &BitVec, g: i64) -> Result<bool, ComplexError> {
        let low = self.low_grading(parity(g))?;
        if g < low {
            return Err(ComplexError::Unstable {
                truncation: self.n as u32,
                detail: format!("grading {g} lies below the tower test grading {low}"),
            });
        }
        let b = self.boundaries(low);
        Ok(!b.contains(&self.lower(v, g, low)))
    }

    /// Top grading of a U-nontorsion class of the given parity, if any.
    pub fn top_nontorsion(&self, par: i64) -> Result<Option<i64>, ComplexError> {
        let low = self.low_grading(par)?;
        let b = self.boundaries(low);
        let top = {
            let m = self.max_gr();
            if parity(m) == par {
                m
            } else {
                m - 1
            }
        };
        let mut r = top;
        while r >= low {
            for z in self.cycles(r) {
                if !b.contains(&self.lower(&z, r, low)) {
                    return Ok(Some(r));
                }
            }
            r -= 2;
        }
        Ok(None)
    }
}
