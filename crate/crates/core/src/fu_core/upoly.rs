use serde::{Deserialize, Serialize};

/// A polynomial in `U` over GF(2), stored as its sorted set of exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(transparent)]
pub struct UPoly(Vec<u32>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![0])
    }

    pub fn monomial(e: u32) -> Self {
        UPoly(vec![e])
    }

    /// Builds the polynomial from exponents; repeated exponents cancel in pairs.
    pub fn from_exponents(es: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = es.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(v.len());
        for e in v {
            if out.last() == Some(&e) {
                out.pop();
            } else {
                out.push(e);
            }
        }
        UPoly(out)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        UPoly::from_exponents(self.0.iter().chain(&other.0).copied())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        UPoly::from_exponents(self.0.iter().flat_map(|a| other.0.iter().map(move |b| a + b)))
    }

    pub fn shift(&self, k: u32) -> UPoly {
        UPoly(self.0.iter().map(|e| e + k).collect())
    }

    /// Reduction modulo `U^n`.
    pub fn truncate(&self, n: u32) -> UPoly {
        UPoly(self.0.iter().copied().filter(|&e| e < n).collect())
    }
}
