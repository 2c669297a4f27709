//! Bit vectors and Gaussian elimination over GF(2).
//!
//! Everything the chain complex engine needs reduces to three questions about
//! GF(2) subspaces: membership, kernels, and consistency of affine systems.

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        Self::from_ones(len, [i])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        if self.get(i) != b {
            self.flip(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

/// A subspace held in echelon form; each stored row is reduced against all
/// earlier rows, so reducing in insertion order is exact.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, BitVec, BitVec)>,
    tag_len: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon form that also records, for every stored row, which inserted
    /// vectors it is the sum of.
    pub fn tracked(tag_len: usize) -> Self {
        Echelon { rows: Vec::new(), tag_len }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut BitVec) {
        for (p, row, _) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
    }

    fn reduce_tagged(&self, v: &mut BitVec, tag: &mut BitVec) {
        for (p, row, t) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
                tag.xor_assign(t);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        self.insert_tagged(v, BitVec::zeros(self.tag_len)).is_none()
    }

    /// Adds `v` carrying `tag`. When `v` is dependent, returns the combined
    /// tag of the relation that killed it.
    pub fn insert_tagged(&mut self, mut v: BitVec, mut tag: BitVec) -> Option<BitVec> {
        self.reduce_tagged(&mut v, &mut tag);
        match v.first_one() {
            None => Some(tag),
            Some(p) => {
                self.rows.push((p, v, tag));
                None
            }
        }
    }
}

/// Kernel basis of the linear map whose columns are `cols` (each of length `rows`).
pub fn kernel(cols: &[BitVec]) -> Vec<BitVec> {
    let n = cols.len();
    let mut ech = Echelon::tracked(n);
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(rel) = ech.insert_tagged(c.clone(), BitVec::unit(n, j)) {
            out.push(rel);
        }
    }
    out
}

pub fn rank(cols: &[BitVec]) -> usize {
    let mut ech = Echelon::new();
    for c in cols {
        ech.insert(c.clone());
    }
    ech.rank()
}

/// Apply the map with the given columns to `x`.
pub fn apply(cols: &[BitVec], rows: usize, x: &BitVec) -> BitVec {
    let mut out = BitVec::zeros(rows);
    for j in x.ones() {
        out.xor_assign(&cols[j]);
    }
    out
}

/// Affine system `A x = b` over GF(2), one equation per row.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    unknowns: usize,
    rows: Vec<(BitVec, bool)>,
}

impl AffineSystem {
    pub fn new(unknowns: usize) -> Self {
        AffineSystem { unknowns, rows: Vec::new() }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    /// Equation: XOR of the listed unknowns equals `rhs`. Repeated indices cancel.
    pub fn push(&mut self, vars: impl IntoIterator<Item = usize>, rhs: bool) {
        let v = BitVec::from_ones(self.unknowns, vars);
        if v.is_zero() && !rhs {
            return;
        }
        self.rows.push((v, rhs));
    }

    /// A solution with all free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self) -> Option<BitVec> {
        let mut piv: Vec<(usize, BitVec, bool)> = Vec::new();
        for (row, rhs) in &self.rows {
            let mut r = row.clone();
            let mut b = *rhs;
            for (p, pr, pb) in &piv {
                if r.get(*p) {
                    r.xor_assign(pr);
                    b ^= pb;
                }
            }
            match r.first_one() {
                None if b => return None,
                None => {}
                Some(p) => piv.push((p, r, b)),
            }
        }
        let mut x = BitVec::zeros(self.unknowns);
        for (p, r, b) in piv.iter().rev() {
            let mut val = *b;
            for j in r.ones() {
                if j != *p && x.get(j) {
                    val = !val;
                }
            }
            x.set(*p, val);
        }
        Some(x)
    }

    pub fn check(&self, x: &BitVec) -> bool {
        self.rows.iter().all(|(r, b)| r.dot(x) == *b)
    }
}
