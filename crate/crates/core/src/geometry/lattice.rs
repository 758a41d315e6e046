//! Primitive lattice vectors in the quotient-lattice convention.
//!
//! Ambient tori live in `R^m / R(1,...,1)`; we realize the quotient lattice as
//! `Z^{m-1}` by dropping the last coordinate, so the class of the m-th basis
//! vector becomes `(-1, ..., -1)`. All coordinates are arbitrary-precision
//! integers: equality and orientation decisions are exact, never floating
//! point.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A nonzero integer vector, stored primitive (coordinate gcd 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    /// Scale a nonzero integer vector down to its primitive representative.
    pub fn primitive(coords: Vec<BigInt>) -> Result<LatticeVector> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroRay);
        }
        let mut g = BigInt::zero();
        for c in &coords {
            g = num_integer::gcd(g, c.abs());
        }
        let scaled = coords.into_iter().map(|c| c / &g).collect();
        Ok(LatticeVector(scaled))
    }

    pub fn from_i64(coords: &[i64]) -> Result<LatticeVector> {
        Self::primitive(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    /// Componentwise sum; callers re-primitivize via `primitive`.
    pub fn raw_sum<'a>(vectors: impl IntoIterator<Item = &'a LatticeVector>) -> Vec<BigInt> {
        let mut acc: Option<Vec<BigInt>> = None;
        for v in vectors {
            match &mut acc {
                None => acc = Some(v.0.clone()),
                Some(a) => {
                    assert_eq!(a.len(), v.0.len(), "rank mismatch in ray sum");
                    for (x, y) in a.iter_mut().zip(&v.0) {
                        *x += y;
                    }
                }
            }
        }
        acc.expect("sum of no vectors")
    }

    /// Concatenate `d` copies of `self` (the diagonal embedding into a d-fold
    /// product of ambient spaces).
    pub fn diagonal(&self, d: usize) -> LatticeVector {
        let mut coords = Vec::with_capacity(self.0.len() * d);
        for _ in 0..d {
            coords.extend(self.0.iter().cloned());
        }
        LatticeVector(coords)
    }

    /// Pad with zeros: `before` zero coordinates in front, `after` behind.
    pub fn padded(&self, before: usize, after: usize) -> LatticeVector {
        let mut coords = vec![BigInt::zero(); before];
        coords.extend(self.0.iter().cloned());
        coords.extend(std::iter::repeat_with(BigInt::zero).take(after));
        LatticeVector(coords)
    }

    pub fn dot(&self, other: &[BigInt]) -> BigInt {
        assert_eq!(self.0.len(), other.len(), "rank mismatch in dot product");
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

/// Quotient a vector in `Z^m` by the all-ones line, eliminating the final
/// coordinate: `v ↦ (v_1 - v_m, ..., v_{m-1} - v_m)`.
pub fn eliminate_last(v: &[BigInt]) -> Vec<BigInt> {
    assert!(!v.is_empty());
    let last = &v[v.len() - 1];
    v[..v.len() - 1].iter().map(|c| c - last).collect()
}
