//! Symmetric graded roots stored as leaf/angle grading sequences.
//!
//! A root is never stored as a tree. The leaves `v_1..v_n` are read left to
//! right, `α_i` is the angle between `v_i` and `v_{i+1}`, and the tree is
//! rebuilt on demand: at grading `g` two leaves share a vertex exactly when
//! every angle between them sits at or above `g`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::fu_core::{Diagnostics, IotaComplex, Matrix, UPoly};
use crate::rational::{as_int, fmt_q, frac, parse_q, q, same_coset2, Q};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("invalid root profile:\n{0}")]
    Invalid(Diagnostics),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("leaf index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootProfile {
    pub leaves: Vec<Q>,
    pub angles: Vec<Q>,
}

/// A profile that reads the same backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricRootProfile(RootProfile);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub grading: Q,
    /// 1-based indices of the leaves above this vertex (including a leaf at this grading).
    pub leaves: Vec<usize>,
    pub parent: Option<usize>,
}

/// Finite top of a graded root. Below `stem` there is one vertex per grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTree {
    pub vertices: Vec<Vertex>,
    pub stem: usize,
}

impl GradedTree {
    pub fn at(&self, g: Q) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter().filter(move |v| v.grading == g)
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(move |(_, w)| w.parent == Some(v))
            .map(|(i, _)| i)
    }
}

impl RootProfile {
    pub fn new(leaves: Vec<Q>, angles: Vec<Q>) -> Self {
        RootProfile { leaves, angles }
    }

    pub fn from_ints(leaves: &[i64], angles: &[i64]) -> Self {
        RootProfile::new(leaves.iter().map(|&x| q(x)).collect(), angles.iter().map(|&x| q(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.leaves.iter().eq(self.leaves.iter().rev()) && self.angles.iter().eq(self.angles.iter().rev())
    }

    pub fn top(&self) -> Q {
        self.leaves.iter().copied().max().unwrap_or_else(|| q(0))
    }

    /// Grading where leaves `i <= j` (1-based) first meet.
    pub fn merge_grading(&self, i: usize, j: usize) -> Q {
        let (i, j) = (i.min(j), i.max(j));
        if i == j {
            return self.leaves[i - 1];
        }
        self.angles[i - 1..j - 1].iter().copied().min().expect("nonempty range")
    }

    /// Grading of the bottom vertex, where every leaf has merged.
    pub fn bottom(&self) -> Q {
        self.angles.iter().copied().min().unwrap_or_else(|| self.leaves[0])
    }

    pub fn shifted(&self, by: Q) -> RootProfile {
        RootProfile::new(self.leaves.iter().map(|g| *g + by).collect(), self.angles.iter().map(|g| *g + by).collect())
    }

    /// Rebuilds the finite part of the tree, from the top leaf down to the bottom vertex.
    pub fn reconstruct_tree(&self) -> Result<GradedTree, RootError> {
        let diag = self.shape_checks();
        if !diag.ok() {
            return Err(RootError::Invalid(diag));
        }
        Ok(self.tree_unchecked())
    }

    fn tree_unchecked(&self) -> GradedTree {
        let n = self.len();
        let bottom = self.bottom();
        let mut vertices: Vec<Vertex> = Vec::new();
        // vertices of the previous (higher) grading, with their leaf sets
        let mut above: Vec<usize> = Vec::new();
        let mut g = self.top();
        while g >= bottom {
            let present: Vec<usize> = (1..=n).filter(|&i| self.leaves[i - 1] >= g).collect();
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for &i in &present {
                match classes.last_mut() {
                    Some(c) if self.merge_grading(*c.last().unwrap(), i) >= g => c.push(i),
                    _ => classes.push(vec![i]),
                }
            }
            let first = vertices.len();
            for c in classes {
                vertices.push(Vertex { grading: g, leaves: c, parent: None });
            }
            for &a in &above {
                let leaf = vertices[a].leaves[0];
                let p = (first..vertices.len()).find(|&k| vertices[k].leaves.contains(&leaf)).unwrap();
                vertices[a].parent = Some(p);
            }
            above = (first..vertices.len()).collect();
            g -= q(2);
        }
        let stem = *above.first().expect("at least one grading");
        GradedTree { vertices, stem }
    }

    fn shape_checks(&self) -> Diagnostics {
        let mut d = Diagnostics::default();
        let n = self.len();
        d.push("nonempty", (n == 0).then(|| "no leaves".to_string()));
        if n == 0 {
            return d;
        }
        d.push(
            "angle_count",
            (self.angles.len() + 1 != n).then(|| format!("{} leaves need {} angles, got {}", n, n - 1, self.angles.len())),
        );
        if self.angles.len() + 1 != n {
            return d;
        }
        let leaf_coset = self
            .leaves
            .iter()
            .chain(&self.angles)
            .enumerate()
            .find(|(_, g)| !same_coset2(g, &self.leaves[0]))
            .map(|(k, g)| {
                let what = if k < n { format!("leaf {}", k + 1) } else { format!("angle {}", k - n + 1) };
                format!("{what} at {} is not an even integer away from leaf 1 at {}", fmt_q(g), fmt_q(&self.leaves[0]))
            });
        d.push("coset", leaf_coset);
        let below = self.angles.iter().enumerate().find_map(|(i, a)| {
            let lo = self.leaves[i].min(self.leaves[i + 1]);
            (*a > lo).then(|| format!("angle {} at {} is above leaf grading {}", i + 1, fmt_q(a), fmt_q(&lo)))
        });
        d.push("angle_below_leaves", below);
        d
    }

    /// Type invariants, then the graded-root axioms on the rebuilt tree.
    pub fn validate(&self) -> Diagnostics {
        let mut d = self.shape_checks();
        if !d.ok() {
            return d;
        }
        let t = self.tree_unchecked();
        let step = t.vertices.iter().enumerate().find_map(|(i, v)| {
            let p = &t.vertices[v.parent?];
            (p.grading != v.grading - q(2)).then(|| format!("edge from vertex {i} drops by {}", fmt_q(&(v.grading - p.grading))))
        });
        d.push("edges_step_two", step);
        let orphan = t
            .vertices
            .iter()
            .enumerate()
            .find(|(i, v)| v.parent.is_none() && *i != t.stem)
            .map(|(i, v)| format!("vertex {i} at {} has no parent", fmt_q(&v.grading)));
        d.push("connected", orphan);
        let local_max = t.vertices.iter().enumerate().find_map(|(i, v)| {
            // a vertex with no children must carry a leaf
            let has_child = t.children(i).next().is_some();
            let is_leaf = v.leaves.iter().any(|&k| self.leaves[k - 1] == v.grading);
            (!has_child && !is_leaf).then(|| format!("vertex {i} at {} is a dead end", fmt_q(&v.grading)))
        });
        d.push("maxima_are_leaves", local_max);
        let stem = (t.at(t.vertices[t.stem].grading).count() != 1)
            .then(|| "bottom grading has more than one vertex".to_string());
        d.push("single_stem", stem);
        let bounded = t.vertices.iter().all(|v| v.grading <= self.top());
        d.push("bounded_above", (!bounded).then(|| "vertex above the top leaf".to_string()));
        if self.is_symmetric() {
            let mut per: BTreeMap<Q, usize> = BTreeMap::new();
            for v in &t.vertices {
                if v.leaves.iter().all(|&i| v.leaves.contains(&(n_plus_one(self) - i))) {
                    *per.entry(v.grading).or_default() += 1;
                }
            }
            let two = per.iter().find(|(_, &c)| c > 1).map(|(g, c)| format!("{c} J-invariant vertices at {}", fmt_q(g)));
            d.push("one_invariant_vertex_per_grading", two);
        }
        d
    }

    /// Rank of `H⁻` of the root at each grading of `[lo, hi]`: one generator per vertex.
    pub fn h_minus_ranks(&self, lo: Q, hi: Q) -> Result<BTreeMap<Q, usize>, RootError> {
        let t = self.reconstruct_tree()?;
        let tau = frac(&self.leaves[0]);
        let bottom = self.bottom();
        let mut out = BTreeMap::new();
        let mut g = lo.floor() + tau;
        if g < lo {
            g += q(1);
        }
        while g <= hi {
            let r = if !same_coset2(&g, &self.leaves[0]) {
                0
            } else if g < bottom {
                1
            } else {
                t.at(g).count()
            };
            out.insert(g, r);
            g += q(1);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        if let Some(g) = self.leaves.first().filter(|g| !g.is_integer()) {
            writeln!(s, "coset: {}", fmt_q(&frac(g))).unwrap();
        }
        writeln!(s, "leaves: {}", join(&self.leaves)).unwrap();
        writeln!(s, "angles: {}", join(&self.angles)).unwrap();
        s
    }

    /// Parses the root file format. A `convention: hf-minus` line marks
    /// gradings in the `HF⁻` normalization, which are raised by 2 on read.
    pub fn from_text(text: &str) -> Result<RootProfile, RootError> {
        let mut leaves = None;
        let mut angles = None;
        let mut coset = None;
        let mut shift = q(0);
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| RootError::Parse { line: k + 1, msg };
            let (key, rest) = line.split_once(':').ok_or_else(|| err(format!("expected `key: value`, got `{line}`")))?;
            let nums = || -> Result<Vec<Q>, RootError> {
                rest.split_whitespace().map(|t| parse_q(t).map_err(err)).collect()
            };
            match key.trim() {
                "leaves" => leaves = Some(nums()?),
                "angles" => angles = Some(nums()?),
                "coset" => coset = Some(parse_q(rest).map_err(err)?),
                "convention" => match rest.trim() {
                    "hf-minus" => shift = q(2),
                    "h" | "normalized" => shift = q(0),
                    other => return Err(err(format!("unknown convention `{other}`"))),
                },
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let leaves = leaves.ok_or(RootError::Parse { line: 0, msg: "missing `leaves:` line".into() })?;
        let angles = angles.unwrap_or_default();
        let p = RootProfile::new(leaves, angles).shifted(shift);
        if let (Some(c), Some(g)) = (coset, p.leaves.first()) {
            if frac(&c) != frac(g) {
                return Err(RootError::Parse {
                    line: 0,
                    msg: format!("leaf gradings lie in {} + Z, not in the declared coset {}", fmt_q(&frac(g)), fmt_q(&c)),
                });
            }
        }
        Ok(p)
    }
}

fn n_plus_one(p: &RootProfile) -> usize {
    p.len() + 1
}

impl SymmetricRootProfile {
    pub fn new(p: RootProfile) -> Result<Self, RootError> {
        let mut d = p.validate();
        d.push("symmetric", (!p.is_symmetric()).then(|| "profile is not a palindrome".to_string()));
        if d.ok() {
            Ok(SymmetricRootProfile(p))
        } else {
            Err(RootError::Invalid(d))
        }
    }

    pub fn from_ints(leaves: &[i64], angles: &[i64]) -> Result<Self, RootError> {
        Self::new(RootProfile::from_ints(leaves, angles))
    }

    pub fn profile(&self) -> &RootProfile {
        &self.0
    }

    pub fn into_profile(self) -> RootProfile {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Grading of the first `J`-invariant vertex below leaf `i` (1-based, left half).
    pub fn mirror_merge(&self, i: usize) -> Result<Q, RootError> {
        let n = self.len();
        let max = n.div_ceil(2);
        if i == 0 || i > max {
            return Err(RootError::Index { index: i, max });
        }
        Ok(self.0.merge_grading(i, n + 1 - i))
    }

    /// Leaves at their gradings, angle `α_i` at `gr(α_i) + 1`, `ι` the reflection.
    pub fn standard_complex(&self) -> IotaComplex {
        let p = &self.0;
        let n = p.len();
        let mut labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        labels.extend((1..n).map(|i| format!("a{i}")));
        let mut gradings = p.leaves.clone();
        gradings.extend(p.angles.iter().map(|a| *a + q(1)));
        let exp = |v: usize, a: usize| as_int(&((p.leaves[v] - p.angles[a]) / q(2))).expect("validated") as u32;
        let mut d = Matrix::new();
        for a in 0..n - 1 {
            for v in [a, a + 1] {
                let e = d.entry((v, n + a)).or_default();
                *e = e.add(&UPoly::monomial(exp(v, a)));
            }
        }
        let mut iota = Matrix::new();
        for v in 0..n {
            iota.insert((n - 1 - v, v), UPoly::one());
        }
        for a in 0..n - 1 {
            iota.insert((n + (n - 2 - a), n + a), UPoly::one());
        }
        IotaComplex::new(labels, gradings, d, iota)
    }
}

impl std::fmt::Display for RootProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let j = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>().join(",");
        write!(f, "leaves ({}) angles ({})", j(&self.leaves), j(&self.angles))
    }
}

impl std::fmt::Display for SymmetricRootProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}
