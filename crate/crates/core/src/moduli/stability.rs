//! Coincidence loci of a weight vector, the torus-invariant chamber test, and
//! the building set a weight induces on its tail points.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::geometry::{simplex_fan, Label};
use crate::moduli::weights::WeightVector;
use crate::nestohedra::BuildingSet;

/// A set of point labels whose simultaneous coincidence is tracked: a proper
/// subset of `{d+1, …, n}` with at least two elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocusIndex {
    indices: BTreeSet<u32>,
}

impl LocusIndex {
    pub fn new(d: usize, n: usize, indices: BTreeSet<u32>) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::invalid(
                "a coincidence locus involves at least two points",
            ));
        }
        if indices.len() >= n - d {
            return Err(Error::invalid(format!(
                "locus index must be a proper subset of {{{}..{}}}",
                d + 1,
                n
            )));
        }
        for &i in &indices {
            if (i as usize) < d + 1 || (i as usize) > n {
                return Err(Error::invalid(format!(
                    "point {i} lies outside {{{}..{}}}",
                    d + 1,
                    n
                )));
            }
        }
        Ok(LocusIndex { indices })
    }

    pub fn indices(&self) -> &BTreeSet<u32> {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.indices.contains(&i)
    }
}

impl fmt::Display for LocusIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn subset_weight(w: &WeightVector, indices: &BTreeSet<u32>) -> BigRational {
    indices.iter().map(|&i| w.weight(i as usize)).sum()
}

/// All proper subsets `I` of `{d+1, …, n}` with `|I| ≥ 2` whose weights sum
/// strictly over 1. These index the forbidden coincidences and hence the
/// blow-up centers.
pub fn heavy_loci(w: &WeightVector) -> BTreeSet<LocusIndex> {
    let d = w.d();
    let n = w.n();
    let pool: Vec<u32> = ((d + 1) as u32..=n as u32).collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << pool.len()) {
        let indices: BTreeSet<u32> = pool
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if indices.len() < 2 || indices.len() >= pool.len() {
            continue;
        }
        if subset_weight(w, &indices) > BigRational::one() {
            out.insert(LocusIndex { indices });
        }
    }
    out
}

/// Does the tail `a_{d+2} + … + a_n` weigh at most 1? When it does, every
/// heavy locus contains point `d+1`, so every blow-up center is
/// torus-invariant in the product model.
pub fn is_toric_chamber(w: &WeightVector) -> bool {
    let tail: BTreeSet<u32> = ((w.d() + 2) as u32..=w.n() as u32).collect();
    subset_weight(w, &tail) <= BigRational::one()
}

/// The proper nonempty subsets `J` of the tail `{d+2, …, n}` with
/// `a_{d+1} + Σ_{j∈J} a_j > 1` — the tail shadows of the heavy loci, and the
/// members the induced building set adds beyond the obligatory singletons.
pub fn promoted_subsets(w: &WeightVector) -> BTreeSet<BTreeSet<u32>> {
    let d = w.d();
    let n = w.n();
    let pivot = w.weight(d + 1);
    let pool: Vec<u32> = ((d + 2) as u32..=n as u32).collect();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << pool.len()) {
        let subset: BTreeSet<u32> = pool
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        if subset.len() >= pool.len() {
            continue;
        }
        if pivot + subset_weight(w, &subset) > BigRational::one() {
            out.insert(subset);
        }
    }
    out
}

/// The building set on the tail ground `{d+2, …, n}`, over the simplex on
/// those labels: all singletons plus every promoted subset.
pub fn induced_building_set(w: &WeightVector) -> Result<BuildingSet> {
    if !is_toric_chamber(w) {
        return Err(Error::invalid(
            "weight lies outside the toric chamber: tail weights sum over 1",
        ));
    }
    let ground: Vec<Label> = ((w.d() + 2) as u32..=w.n() as u32)
        .map(Label::Simple)
        .collect();
    let mut members: BTreeSet<BTreeSet<Label>> = ground
        .iter()
        .map(|l| BTreeSet::from([l.clone()]))
        .collect();
    for subset in promoted_subsets(w) {
        members.insert(subset.into_iter().map(Label::Simple).collect());
    }
    let reference = simplex_fan(&ground)?;
    let b = BuildingSet::over_polytope(ground, members, reference)?;
    let validation = b.validate()?;
    if !validation.is_valid() {
        return Err(Error::internal(format!(
            "induced building set failed validation: {:?}",
            validation
        )));
    }
    Ok(b)
}
