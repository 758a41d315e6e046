use crate::error::{Error, Result};

/// A cone of a simplicial fan, identified by the strictly increasing list of
/// indices of its generating rays in the owning fan's ray table. The empty
/// list is the zero cone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    /// Build from arbitrary order; rejects duplicates.
    pub fn new(mut rays: Vec<usize>) -> Result<Cone> {
        rays.sort_unstable();
        if rays.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate ray index in cone"));
        }
        Ok(Cone { rays })
    }

    pub fn zero() -> Cone {
        Cone::default()
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains_ray(&self, index: usize) -> bool {
        self.rays.binary_search(&index).is_ok()
    }

    /// Subset test on sorted index lists.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        let mut it = other.rays.iter();
        'outer: for r in &self.rays {
            for s in it.by_ref() {
                if s == r {
                    continue 'outer;
                }
                if s > r {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Index union (merge of sorted lists).
    pub fn union(&self, other: &Cone) -> Cone {
        let mut rays = Vec::with_capacity(self.rays.len() + other.rays.len());
        let (mut i, mut j) = (0, 0);
        while i < self.rays.len() && j < other.rays.len() {
            use std::cmp::Ordering::*;
            match self.rays[i].cmp(&other.rays[j]) {
                Less => {
                    rays.push(self.rays[i]);
                    i += 1;
                }
                Greater => {
                    rays.push(other.rays[j]);
                    j += 1;
                }
                Equal => {
                    rays.push(self.rays[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        rays.extend_from_slice(&self.rays[i..]);
        rays.extend_from_slice(&other.rays[j..]);
        Cone { rays }
    }

    /// Index intersection.
    pub fn intersection(&self, other: &Cone) -> Cone {
        let rays = self
            .rays
            .iter()
            .filter(|r| other.contains_ray(**r))
            .copied()
            .collect();
        Cone { rays }
    }

    /// Remove one ray and insert another (used by stellar subdivision).
    pub fn replace_ray(&self, remove: usize, insert: usize) -> Cone {
        let mut rays: Vec<usize> = self
            .rays
            .iter()
            .copied()
            .filter(|&r| r != remove)
            .collect();
        rays.push(insert);
        rays.sort_unstable();
        Cone { rays }
    }

    /// All faces (subsets), including the zero cone and the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        let k = self.rays.len();
        assert!(k < usize::BITS as usize - 1, "cone too large to enumerate faces");
        let mut out = Vec::with_capacity(1 << k);
        for mask in 0..(1usize << k) {
            let rays = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| self.rays[b])
                .collect();
            out.push(Cone { rays });
        }
        out
    }
}
