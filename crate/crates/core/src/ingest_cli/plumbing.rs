//! Weighted plumbing trees: intersection form, canonical class, definiteness,
//! and the rational / almost-rational tests via Laufer's computation sequence.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlumbingError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("not a tree: {0}")]
    NotTree(String),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

/// A decorated tree; vertex `i` carries weight `m(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<String>,
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum ArVerdict {
    /// Rational after lowering `vertex` by `decrement` (0 means already rational).
    Yes { vertex: usize, decrement: u32 },
    No,
    Inconclusive { bound: u32 },
}

impl fmt::Display for ArVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArVerdict::Yes { vertex, decrement } => write!(f, "yes (vertex {vertex}, decrement {decrement})"),
            ArVerdict::No => f.write_str("no"),
            ArVerdict::Inconclusive { bound } => write!(f, "inconclusive (bound {bound})"),
        }
    }
}

pub const DEFAULT_AR_BOUND: u32 = 64;

struct Laufer {
    rational: bool,
    /// `hot[v]`: some step saw `Z·E_v > 0`.
    hot: Vec<bool>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, PlumbingError> {
        let ids = (0..weights.len()).map(|i| i.to_string()).collect();
        Self::with_ids(ids, weights, edges)
    }

    fn with_ids(ids: Vec<String>, weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, PlumbingError> {
        let n = weights.len();
        if n == 0 {
            return Err(PlumbingError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(PlumbingError::NotTree(format!("{n} vertices but {} edges", edges.len())));
        }
        // union-find: n-1 edges and no cycle means connected
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(PlumbingError::NotTree(format!("edge ({a},{b}) out of range")));
            }
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                return Err(PlumbingError::NotTree(format!("edge {}-{} closes a cycle", ids[a], ids[b])));
            }
            parent[ra] = rb;
        }
        Ok(PlumbingGraph { ids, weights, edges })
    }

    /// Lines `vertex <id> <weight>` and `edge <id> <id>`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, PlumbingError> {
        let mut index = BTreeMap::new();
        let (mut ids, mut weights, mut raw_edges) = (Vec::new(), Vec::new(), Vec::new());
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let err = |msg: String| PlumbingError::Parse { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            let words: Vec<&str> = body.split_whitespace().collect();
            match words.as_slice() {
                [] => {}
                ["vertex", id, w] => {
                    let w: i64 = w.parse().map_err(|_| err(format!("bad weight `{w}`")))?;
                    if index.insert(id.to_string(), ids.len()).is_some() {
                        return Err(err(format!("duplicate vertex `{id}`")));
                    }
                    ids.push(id.to_string());
                    weights.push(w);
                }
                ["edge", a, b] => raw_edges.push((line, a.to_string(), b.to_string())),
                _ => return Err(err(format!("expected `vertex <id> <weight>` or `edge <id> <id>`, got `{body}`"))),
            }
        }
        let mut edges = Vec::new();
        for (line, a, b) in raw_edges {
            let look = |id: &str| {
                index.get(id).copied().ok_or_else(|| PlumbingError::Parse { line, msg: format!("unknown vertex `{id}`") })
            };
            edges.push((look(&a)?, look(&b)?));
        }
        Self::with_ids(ids, weights, edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (id, w) in self.ids.iter().zip(&self.weights) {
            s += &format!("vertex {id} {w}\n");
        }
        for &(a, b) in &self.edges {
            s += &format!("edge {} {}\n", self.ids[a], self.ids[b]);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn intersection_form(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &w) in self.weights.iter().enumerate() {
            m[i][i] = w;
        }
        for &(a, b) in &self.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    /// `K(v) = -m(v) - 2`.
    pub fn canonical_k(&self) -> Vec<i64> {
        self.weights.iter().map(|m| -m - 2).collect()
    }

    /// Leading principal minors by fraction-free elimination; the `k`-th must have sign `(-1)^k`.
    pub fn is_negative_definite(&self) -> Result<bool, PlumbingError> {
        let mut a: Vec<Vec<i128>> =
            self.intersection_form().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let n = a.len();
        let mut prev: i128 = 1;
        for k in 0..n {
            let minor = a[k][k];
            let want_negative = k % 2 == 0;
            if minor == 0 || (minor < 0) != want_negative {
                return Ok(false);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j]
                        .checked_mul(a[k][k])
                        .zip(a[i][k].checked_mul(a[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(PlumbingError::Overflow)?;
                    a[i][j] = t / prev;
                }
            }
            prev = minor;
        }
        Ok(true)
    }

    pub fn determinant(&self) -> Result<i128, PlumbingError> {
        let mut a: Vec<Vec<i128>> =
            self.intersection_form().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let n = a.len();
        let mut prev: i128 = 1;
        let mut sign = 1;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j]
                        .checked_mul(a[k][k])
                        .zip(a[i][k].checked_mul(a[k][j]))
                        .and_then(|(x, y)| x.checked_sub(y))
                        .ok_or(PlumbingError::Overflow)?;
                    a[i][j] = t / prev;
                }
            }
            prev = a[k][k];
        }
        Ok(sign * prev)
    }

    /// `K² = Kᵀ Q⁻¹ K`, exactly.
    pub fn k_squared(&self) -> Result<Ratio<i128>, PlumbingError> {
        type R = Ratio<i128>;
        let n = self.len();
        let form = self.intersection_form();
        let k = self.canonical_k();
        let mut m: Vec<Vec<R>> = (0..n)
            .map(|i| {
                let mut row: Vec<R> = form[i].iter().map(|&x| R::from_integer(x.into())).collect();
                row.push(R::from_integer(k[i].into()));
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(PlumbingError::NotNegativeDefinite)?;
            m.swap(c, piv);
            let p = m[c][c];
            m[c].iter_mut().skip(c).for_each(|x| *x /= p);
            let pivot_row = m[c].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != c && !row[c].is_zero() {
                    let f = row[c];
                    row.iter_mut().zip(&pivot_row).skip(c).for_each(|(x, y)| *x -= *y * f);
                }
            }
        }
        Ok((0..n).map(|i| m[i][n] * R::from_integer(k[i].into())).sum())
    }

    fn laufer(&self, weights: &[i64]) -> Laufer {
        let n = weights.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let dot = |z: &[i64], v: usize| z[v] * weights[v] + adj[v].iter().map(|&w| z[w]).sum::<i64>();
        let mut z = vec![0i64; n];
        z[0] = 1;
        let mut hot = vec![false; n];
        loop {
            let mut next = None;
            for (v, h) in hot.iter_mut().enumerate() {
                let p = dot(&z, v);
                if p > 0 {
                    *h = true;
                    next.get_or_insert((v, p));
                }
            }
            match next {
                None => return Laufer { rational: true, hot },
                // χ(Z + E_v) = χ(Z) + 1 - Z·E_v drops below 1
                Some((_, p)) if p >= 2 => return Laufer { rational: false, hot },
                Some((v, _)) => z[v] += 1,
            }
        }
    }

    fn require_negative_definite(&self, weights: &[i64]) -> Result<(), PlumbingError> {
        let g = PlumbingGraph { ids: self.ids.clone(), weights: weights.to_vec(), edges: self.edges.clone() };
        if g.is_negative_definite()? {
            Ok(())
        } else {
            Err(PlumbingError::NotNegativeDefinite)
        }
    }

    pub fn is_rational(&self) -> Result<bool, PlumbingError> {
        self.require_negative_definite(&self.weights)?;
        Ok(self.laufer(&self.weights).rational)
    }

    /// Connected components of the graph with `v` removed, as vertex lists.
    fn components_without(&self, v: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                for &w in &adj[comp[k]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn induced(&self, keep: &[usize]) -> PlumbingGraph {
        let pos = |v: usize| keep.binary_search(&v).ok();
        let edges = self.edges.iter().filter_map(|&(a, b)| Some((pos(a)?, pos(b)?))).collect();
        PlumbingGraph {
            ids: keep.iter().map(|&v| self.ids[v].clone()).collect(),
            weights: keep.iter().map(|&v| self.weights[v]).collect(),
            edges,
        }
    }

    /// Tries `m(v) - k` for every vertex `v` and `k = 0..=bound`. A vertex is
    /// ruled out for good when some component of the graph without it is not
    /// rational (full subgraphs of rational graphs are rational), or when a failed
    /// run never saw a positive product at `v`, so lowering `m(v)` cannot change it.
    pub fn is_almost_rational(&self, bound: u32) -> Result<ArVerdict, PlumbingError> {
        self.require_negative_definite(&self.weights)?;
        let mut settled_no: Vec<bool> = (0..self.len())
            .map(|v| {
                self.components_without(v).iter().any(|c| {
                    let g = self.induced(c);
                    !g.laufer(&g.weights).rational
                })
            })
            .collect();
        if settled_no.iter().all(|&s| s) {
            return Ok(ArVerdict::No);
        }
        for k in 0..=bound {
            for v in 0..self.len() {
                if settled_no[v] {
                    continue;
                }
                let mut w = self.weights.clone();
                w[v] -= i64::from(k);
                let run = self.laufer(&w);
                if run.rational {
                    return Ok(ArVerdict::Yes { vertex: v, decrement: k });
                }
                settled_no[v] = !run.hot[v];
            }
            if settled_no.iter().all(|&s| s) {
                return Ok(ArVerdict::No);
            }
        }
        Ok(ArVerdict::Inconclusive { bound })
    }
}

impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> PlumbingGraph {
        let edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        PlumbingGraph::new(vec![-2; 8], edges).unwrap()
    }

    #[test]
    fn small_forms() {
        let g = PlumbingGraph::new(vec![-1], vec![]).unwrap();
        assert_eq!(g.intersection_form(), vec![vec![-1]]);
        assert!(g.is_negative_definite().unwrap());
        assert!(g.is_rational().unwrap());
        let g = PlumbingGraph::new(vec![-2, -2], vec![(0, 1)]).unwrap();
        assert_eq!(g.intersection_form(), vec![vec![-2, 1], vec![1, -2]]);
        assert!(g.is_negative_definite().unwrap());
        let g = PlumbingGraph::new(vec![0], vec![]).unwrap();
        assert!(!g.is_negative_definite().unwrap());
        assert_eq!(g.is_rational(), Err(PlumbingError::NotNegativeDefinite));
    }

    #[test]
    fn canonical_class() {
        let g = PlumbingGraph::new(vec![-2, -1, -7], vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.canonical_k(), vec![0, -1, 5]);
    }

    #[test]
    fn e8_lattice() {
        let g = e8();
        assert!(g.is_negative_definite().unwrap());
        assert_eq!(g.determinant().unwrap(), 1);
        assert!(g.is_rational().unwrap());
        assert_eq!(g.is_almost_rational(DEFAULT_AR_BOUND).unwrap(), ArVerdict::Yes { vertex: 0, decrement: 0 });
        assert_eq!(g.k_squared().unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn not_a_tree() {
        assert!(matches!(PlumbingGraph::new(vec![-2; 3], vec![(0, 1), (1, 2), (2, 0)]), Err(PlumbingError::NotTree(_))));
        assert!(matches!(PlumbingGraph::new(vec![-2; 3], vec![(0, 1)]), Err(PlumbingError::NotTree(_))));
    }

    #[test]
    fn elliptic_star_is_not_rational_but_is_almost() {
        let g = PlumbingGraph::new(vec![-1, -2, -3, -7], vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(g.is_negative_definite().unwrap());
        assert_eq!(g.determinant().unwrap(), 1);
        assert!(!g.is_rational().unwrap());
        assert!(matches!(g.is_almost_rational(8).unwrap(), ArVerdict::Yes { vertex: 0, decrement: 1 }));
    }

    #[test]
    fn star_with_minus_three_centre_is_rational() {
        let g = PlumbingGraph::new(vec![-3, -2, -2, -2, -2], vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(g.is_rational().unwrap());
    }

    #[test]
    fn two_elliptic_stars_are_not_almost_rational() {
        let g = PlumbingGraph::new(
            vec![-1, -2, -3, -7, -100, -1, -2, -3, -7],
            vec![(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (5, 7), (5, 8)],
        )
        .unwrap();
        assert!(g.is_negative_definite().unwrap());
        assert_eq!(g.is_almost_rational(DEFAULT_AR_BOUND).unwrap(), ArVerdict::No);
    }

    #[test]
    fn text_round_trip() {
        let text = "vertex a -2\nvertex b -3 # comment\nedge a b\n";
        let g = PlumbingGraph::parse(text).unwrap();
        assert_eq!(g.weights(), &[-2, -3]);
        assert_eq!(PlumbingGraph::parse(&g.to_text()).unwrap(), g);
        let e = PlumbingGraph::parse("vertex a -2\nedge a z\n").unwrap_err();
        assert_eq!(e, PlumbingError::Parse { line: 2, msg: "unknown vertex `z`".into() });
    }
}
