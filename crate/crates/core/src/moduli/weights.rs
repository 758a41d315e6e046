//! Exact rational weight vectors for configurations of `n` labeled points in
//! `d`-dimensional projective space.
//!
//! A weight vector assigns a rational `a_i` to every point. The admissible
//! range for each entry is bounded below by [`weight_floor`] and above by 1;
//! construction checks shape only, so that out-of-range vectors can still be
//! built and then reported by [`validate_weight`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Weights `a_1..a_n` for `n` labeled points in projective `d`-space.
///
/// Invariants enforced at construction: `d ≥ 1`, `n > d+2`, exactly `n`
/// entries, all entries positive. The floor/ceiling bounds are a separate,
/// reportable property checked by [`validate_weight`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    d: usize,
    n: usize,
    a: Vec<BigRational>,
}

impl WeightVector {
    pub fn new(d: usize, n: usize, a: Vec<BigRational>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("the ambient dimension d must be at least 1"));
        }
        if n <= d + 2 {
            return Err(Error::DegenerateWeightShape { d, n });
        }
        if a.len() != n {
            return Err(Error::invalid(format!(
                "expected {} weight entries, got {}",
                n,
                a.len()
            )));
        }
        if let Some(bad) = a.iter().find(|x| **x <= BigRational::from_integer(0.into())) {
            return Err(Error::invalid(format!(
                "weights must be positive, got {}",
                bad
            )));
        }
        Ok(WeightVector { d, n, a })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.a
    }

    /// The weight of point `i`, 1-based.
    pub fn weight(&self, i: usize) -> &BigRational {
        &self.a[i - 1]
    }
}

/// Componentwise lower bound of the admissible weight region for `(d, n)`.
///
/// With `e = 1/(n-d)` and `e' = 1/((d+1)(n-d))`: the first `d` entries are
/// `1 - e'`, entry `d+1` is `1 - (n-d-1)e + de'`, and the remaining `n-d-1`
/// entries are `e`. The entries always sum to exactly `d + 1`.
pub fn weight_floor(d: usize, n: usize) -> Result<Vec<BigRational>> {
    if d == 0 {
        return Err(Error::invalid("the ambient dimension d must be at least 1"));
    }
    if n <= d + 2 {
        return Err(Error::DegenerateWeightShape { d, n });
    }
    let eps = ratio(1, (n - d) as i64);
    let eps_prime = ratio(1, ((d + 1) * (n - d)) as i64);
    let one = BigRational::one();
    let mut floor = Vec::with_capacity(n);
    for i in 1..=n {
        let w = if i <= d {
            &one - &eps_prime
        } else if i == d + 1 {
            &one - ratio((n - d - 1) as i64, 1) * &eps + ratio(d as i64, 1) * &eps_prime
        } else {
            eps.clone()
        };
        floor.push(w);
    }
    Ok(floor)
}

/// Do all entries lie between the floor for `(d, n)` and 1, componentwise?
pub fn validate_weight(w: &WeightVector) -> bool {
    let floor = weight_floor(w.d(), w.n()).expect("shape was checked at construction");
    let one = BigRational::one();
    w.entries()
        .iter()
        .zip(floor.iter())
        .all(|(a, f)| f <= a && *a <= one)
}

/// The weight vector of the generalized Losev–Manin compactification: the
/// first `d+1` points carry weight 1, the remaining `n-d-1` points share one
/// unit equally.
pub fn losev_manin_weights(d: usize, n: usize) -> Result<WeightVector> {
    if d == 0 {
        return Err(Error::invalid("the ambient dimension d must be at least 1"));
    }
    if n <= d + 2 {
        return Err(Error::DegenerateWeightShape { d, n });
    }
    let tail = ratio(1, (n - d - 1) as i64);
    let mut a = vec![BigRational::one(); d + 1];
    a.extend(std::iter::repeat(tail).take(n - d - 1));
    WeightVector::new(d, n, a)
}
