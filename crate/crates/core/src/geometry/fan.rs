//! Simplicial rational fans with exact comparisons.
//!
//! A [`Fan`] owns an append-only ray table and a list of maximal cones given
//! as sorted ray-index sets. Cones of the fan are exactly the subsets of the
//! maximal cones, so face queries are subset queries. Everything that decides
//! geometry (containment, refinement, validity) runs over arbitrary-precision
//! integers or rationals.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::cone::Cone;
use crate::geometry::label::Label;
use crate::geometry::lattice::LatticeVector;
use crate::geometry::{linalg, lp};

/// A simplicial fan in the lattice `Z^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
    labels: BTreeMap<usize, Label>,
}

/// Validation outcome: an empty `violations` list means the fan is valid.
#[derive(Debug, Clone, Default)]
pub struct FanValidation {
    pub violations: Vec<String>,
}

impl FanValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Fan {
    /// Assemble a fan from parts, checking only cheap structural facts
    /// (index ranges, rank consistency, distinct max cones). Geometric
    /// soundness is the job of [`Fan::validate`].
    pub fn from_parts(
        rank: usize,
        rays: Vec<LatticeVector>,
        max_cones: Vec<Cone>,
        labels: BTreeMap<usize, Label>,
    ) -> Result<Fan> {
        for r in &rays {
            if r.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: r.rank(),
                });
            }
        }
        for c in &max_cones {
            for &i in c.rays() {
                if i >= rays.len() {
                    return Err(Error::RayIndexOutOfRange {
                        index: i,
                        count: rays.len(),
                    });
                }
            }
        }
        for (&i, _) in &labels {
            if i >= rays.len() {
                return Err(Error::RayIndexOutOfRange {
                    index: i,
                    count: rays.len(),
                });
            }
        }
        if max_cones.is_empty() {
            return Err(Error::invalid("a fan needs at least one maximal cone"));
        }
        Ok(Fan {
            rank,
            rays,
            max_cones,
            labels,
        })
    }

    /// The rank-0 fan of a point: no rays, one zero cone.
    pub fn point() -> Fan {
        Fan {
            rank: 0,
            rays: Vec::new(),
            max_cones: vec![Cone::zero()],
            labels: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn label(&self, ray: usize) -> Option<Label> {
        self.labels.get(&ray).copied()
    }

    pub fn labels(&self) -> &BTreeMap<usize, Label> {
        &self.labels
    }

    /// Map from label to ray index. Errors if a label repeats.
    pub fn label_index(&self) -> Result<HashMap<Label, usize>> {
        let mut map = HashMap::new();
        for (&i, &l) in &self.labels {
            if map.insert(l, i).is_some() {
                return Err(Error::invalid(format!("duplicate ray label {l}")));
            }
        }
        Ok(map)
    }

    fn check_indices(&self, rays: &[usize]) -> Result<()> {
        for &i in rays {
            if i >= self.rays.len() {
                return Err(Error::RayIndexOutOfRange {
                    index: i,
                    count: self.rays.len(),
                });
            }
        }
        Ok(())
    }

    /// Look up the face spanned by the given ray indices: `Some(cone)` when it
    /// is a face of some maximal cone, `None` otherwise. The empty set names
    /// the zero cone, which every fan contains.
    pub fn lookup_cone(&self, rays: &[usize]) -> Result<Option<Cone>> {
        self.check_indices(rays)?;
        let cone = Cone::new(rays.to_vec())?;
        if cone.is_zero() || self.max_cones.iter().any(|m| cone.is_face_of(m)) {
            Ok(Some(cone))
        } else {
            Ok(None)
        }
    }

    pub fn contains_cone(&self, cone: &Cone) -> Result<bool> {
        Ok(self.lookup_cone(cone.rays())?.is_some())
    }

    /// Smallest cone containing both arguments: the cone on the union of
    /// their rays when that is a face of the fan, otherwise `None`.
    pub fn join(&self, a: &Cone, b: &Cone) -> Result<Option<Cone>> {
        if !self.contains_cone(a)? || !self.contains_cone(b)? {
            return Err(Error::ConeNotInFan);
        }
        let union = a.union(b);
        self.lookup_cone(union.rays())
    }

    /// All cones of the fan containing `sigma`, enumerated through the
    /// maximal cones and their faces.
    pub fn star(&self, sigma: &Cone) -> Result<Vec<Cone>> {
        if !self.contains_cone(sigma)? {
            return Err(Error::ConeNotInFan);
        }
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        for m in &self.max_cones {
            if !sigma.is_face_of(m) {
                continue;
            }
            let extra: Vec<usize> = m
                .rays()
                .iter()
                .copied()
                .filter(|r| !sigma.contains_ray(*r))
                .collect();
            for mask in 0..(1usize << extra.len()) {
                let mut rays = sigma.rays().to_vec();
                for (b, &r) in extra.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        rays.push(r);
                    }
                }
                out.insert(Cone::new(rays)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Every distinct cone of the fan (all faces of all maximal cones),
    /// including the zero cone.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out: BTreeSet<Cone> = BTreeSet::new();
        for m in &self.max_cones {
            for f in m.faces() {
                out.insert(f);
            }
        }
        out.into_iter().collect()
    }

    /// Count of cones per dimension, starting with the zero cone:
    /// `(1, #rays, ..., #maximal)` for a complete simplicial fan.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.rank + 1];
        for c in self.all_cones() {
            counts[c.dim()] += 1;
        }
        counts
    }

    /// Stellar subdivision at `sigma`: insert the primitive ray sum of
    /// `sigma`'s generators and re-triangulate every maximal cone containing
    /// `sigma`. Subdividing a single ray is the identity.
    pub fn star_subdivision(&self, sigma: &Cone) -> Result<Fan> {
        if sigma.is_zero() {
            return Err(Error::invalid("cannot subdivide the zero cone"));
        }
        if !self.contains_cone(sigma)? {
            return Err(Error::ConeNotInFan);
        }
        if sigma.dim() == 1 {
            return Ok(self.clone());
        }
        let sum = LatticeVector::raw_sum(sigma.rays().iter().map(|&i| &self.rays[i]));
        let u = LatticeVector::primitive(sum)?;
        if self.rays.contains(&u) {
            return Err(Error::internal(
                "subdivision ray already present; input fan is not valid",
            ));
        }
        let new_index = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(u);
        let mut max_cones = Vec::with_capacity(self.max_cones.len() + sigma.dim());
        for m in &self.max_cones {
            if sigma.is_face_of(m) {
                for &s in sigma.rays() {
                    max_cones.push(m.replace_ray(s, new_index));
                }
            } else {
                max_cones.push(m.clone());
            }
        }
        Ok(Fan {
            rank: self.rank,
            rays,
            max_cones,
            labels: self.labels.clone(),
        })
    }

    /// Product fan: ranks add, rays pad with zeros, maximal cones pair up.
    pub fn product(&self, other: &Fan) -> Fan {
        let rank = self.rank + other.rank;
        let mut rays = Vec::with_capacity(self.rays.len() + other.rays.len());
        for r in &self.rays {
            rays.push(r.padded(0, other.rank));
        }
        for r in &other.rays {
            rays.push(r.padded(self.rank, 0));
        }
        let shift = self.rays.len();
        let mut max_cones = Vec::with_capacity(self.max_cones.len() * other.max_cones.len());
        for a in &self.max_cones {
            for b in &other.max_cones {
                let mut idx: Vec<usize> = a.rays().to_vec();
                idx.extend(b.rays().iter().map(|&i| i + shift));
                max_cones.push(Cone::new(idx).expect("disjoint index ranges"));
            }
        }
        let mut labels = self.labels.clone();
        for (&i, &l) in &other.labels {
            labels.insert(i + shift, l);
        }
        Fan {
            rank,
            rays,
            max_cones,
            labels,
        }
    }

    /// True when every maximal cone extends to a lattice basis (gcd of
    /// maximal minors is 1; absolute determinant 1 in the full-dimensional
    /// case).
    pub fn is_unimodular(&self) -> bool {
        self.max_cones.iter().all(|c| {
            if c.is_zero() {
                return true;
            }
            let rows: Vec<Vec<BigInt>> = c
                .rays()
                .iter()
                .map(|&i| self.rays[i].coords().to_vec())
                .collect();
            if rows.len() > self.rank {
                return false;
            }
            linalg::maximal_minor_gcd(&rows).is_one()
        })
    }

    /// Wall condition for completeness: the fan is pure full-dimensional and
    /// every codimension-one face lies in exactly two maximal cones. For a
    /// valid fan this characterizes complete support.
    pub fn is_complete(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        if self.max_cones.iter().any(|c| c.dim() != self.rank) {
            return false;
        }
        let mut wall_counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for m in &self.max_cones {
            for &drop in m.rays() {
                let wall: Vec<usize> = m.rays().iter().copied().filter(|&r| r != drop).collect();
                *wall_counts.entry(wall).or_insert(0) += 1;
            }
        }
        wall_counts.values().all(|&c| c == 2)
    }

    /// Does `self` refine `other`: same rank, every maximal cone of `self`
    /// contained in a maximal cone of `other`, and the supports agree. Both
    /// fans must be pure full-dimensional.
    ///
    /// Support agreement is certified radially: inside a target cone, each
    /// contained cone cuts a simplex out of the target's coordinate simplex
    /// (generators rescaled to coordinate sum one), and those pieces have
    /// disjoint interiors, so they fill the target exactly when their
    /// fractional volumes sum to one. Everything is exact rational
    /// arithmetic.
    pub fn refines(&self, other: &Fan) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: other.rank,
                got: self.rank,
            });
        }
        if self.rank == 0 {
            return Ok(true);
        }
        let pure = |f: &Fan| f.max_cones.iter().all(|c| c.dim() == f.rank);
        if !pure(self) || !pure(other) {
            return Err(Error::invalid(
                "refinement test requires pure full-dimensional fans",
            ));
        }
        let cone_det = |f: &Fan, c: &Cone| -> BigInt {
            let rows: Vec<Vec<BigInt>> = c
                .rays()
                .iter()
                .map(|&i| f.rays[i].coords().to_vec())
                .collect();
            linalg::int_det(&rows).abs()
        };
        // Fraction of target cone `gi` covered so far.
        let mut covered: Vec<BigRational> = vec![BigRational::zero(); other.max_cones.len()];
        'cones: for c in &self.max_cones {
            'targets: for (gi, g) in other.max_cones.iter().enumerate() {
                let columns: Vec<Vec<BigInt>> = g
                    .rays()
                    .iter()
                    .map(|&i| other.rays[i].coords().to_vec())
                    .collect();
                // Coordinate sums of c's generators inside g; all generators
                // must have a nonnegative solution for c to sit inside g.
                let mut sum_product = BigRational::one();
                for &r in c.rays() {
                    let Some(x) = linalg::solve_columns(&columns, self.rays[r].coords()) else {
                        continue 'targets;
                    };
                    if x.iter().any(|v| v.is_negative()) {
                        continue 'targets;
                    }
                    let s: BigRational = x.iter().sum();
                    sum_product *= s;
                }
                // det(V_c) = det(M_g) * det(barycentric coords); rescaling
                // each coordinate vector to sum one divides by the sums.
                let num = BigRational::from(cone_det(self, c));
                let den = BigRational::from(cone_det(other, g)) * sum_product;
                covered[gi] += num / den;
                continue 'cones;
            }
            return Ok(false);
        }
        Ok(covered.iter().all(|f| f.is_one()))
    }

    /// Canonical presentation: rays sorted lexicographically by coordinates,
    /// cone index sets remapped and sorted. Labels ride along with their
    /// rays.
    pub fn canonical(&self) -> CanonicalFan {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].coords().cmp(self.rays[b].coords()));
        let mut position = vec![0usize; self.rays.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let rays: Vec<LatticeVector> = order.iter().map(|&i| self.rays[i].clone()).collect();
        let mut max_cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c.rays().iter().map(|&i| position[i]).collect();
                idx.sort_unstable();
                idx
            })
            .collect();
        max_cones.sort();
        max_cones.dedup();
        let labels: Vec<Option<Label>> = order.iter().map(|&i| self.label(i)).collect();
        CanonicalFan {
            rank: self.rank,
            rays,
            max_cones,
            labels,
        }
    }

    /// Rewrite ray coordinates by a coordinate permutation:
    /// `new[j] = old[perm[j]]`. Used to transport a fan through a lattice
    /// symmetry such as swapping product factors.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Fan> {
        if perm.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.rank];
        for &p in perm {
            if p >= self.rank || seen[p] {
                return Err(Error::invalid("not a permutation of coordinates"));
            }
            seen[p] = true;
        }
        let rays = self
            .rays
            .iter()
            .map(|r| {
                let coords: Vec<BigInt> = perm.iter().map(|&p| r.coords()[p].clone()).collect();
                LatticeVector::primitive(coords).expect("permuted ray stays nonzero")
            })
            .collect();
        Ok(Fan {
            rank: self.rank,
            rays,
            max_cones: self.max_cones.clone(),
            labels: self.labels.clone(),
        })
    }

    /// Full validity report: ray hygiene, simpliciality, and the pairwise
    /// condition that maximal cones meet in common faces.
    ///
    /// The pairwise check first tries dual-basis certificates (fast, covers
    /// well-behaved fans) and falls back to an exact rational feasibility
    /// solve, so a clean report is a proof, not a heuristic.
    pub fn validate(&self) -> FanValidation {
        let mut violations = Vec::new();

        let mut seen: HashMap<&[BigInt], usize> = HashMap::new();
        for (i, r) in self.rays.iter().enumerate() {
            if let Some(&j) = seen.get(r.coords()) {
                violations.push(format!("duplicate rays {j} and {i}"));
            } else {
                seen.insert(r.coords(), i);
            }
            // `LatticeVector` construction enforces primitivity; re-check so a
            // report never depends on type discipline alone.
            let mut g = BigInt::zero();
            for c in r.coords() {
                g = num_integer::gcd(g, c.abs());
            }
            if !g.is_one() {
                violations.push(format!("ray {i} is not primitive"));
            }
        }

        for (ci, c) in self.max_cones.iter().enumerate() {
            let rows: Vec<Vec<BigInt>> = c
                .rays()
                .iter()
                .map(|&i| self.rays[i].coords().to_vec())
                .collect();
            if linalg::int_rank(&rows) != c.dim() {
                violations.push(format!("cone {ci} is not simplicial"));
            }
        }
        if !violations.is_empty() {
            // Ray or simpliciality problems make the pairwise analysis
            // meaningless; report what we have.
            return FanValidation { violations };
        }

        violations.extend(self.pairwise_face_violations());
        FanValidation { violations }
    }

    /// For every unordered pair of maximal cones, certify that their
    /// geometric intersection is the cone on their common rays.
    fn pairwise_face_violations(&self) -> Vec<String> {
        let n = self.max_cones.len();
        if n < 2 {
            return Vec::new();
        }
        // Scaled dual bases for full-dimensional cones: row k of `duals[c]`
        // pairs to |det| > 0 with ray k of cone c and to 0 with its other
        // rays.
        let duals: Vec<Option<Vec<Vec<BigInt>>>> = self
            .max_cones
            .par_iter()
            .map(|c| {
                if c.dim() != self.rank || self.rank == 0 {
                    return None;
                }
                let matrix: Vec<Vec<BigInt>> = (0..self.rank)
                    .map(|row| {
                        c.rays()
                            .iter()
                            .map(|&i| self.rays[i].coords()[row].clone())
                            .collect()
                    })
                    .collect();
                let det = linalg::int_det(&matrix);
                if det.is_zero() {
                    return None;
                }
                let adj = linalg::adjugate(&matrix);
                let sign = if det.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                };
                Some(
                    adj.iter()
                        .map(|row| row.iter().map(|x| x * &sign).collect())
                        .collect(),
                )
            })
            .collect();

        // Machine-word mirror: D[c] holds, flattened row-major, the pairing
        // of every dual row of cone c with every ray of the fan, in i128.
        // Built only when every entry fits the stated bounds (always, at
        // desk scale); anything larger keeps the exact big-integer path, so
        // the downcast buys speed without costing correctness.
        //
        // Any functional that is nonnegative on all of one cone, vanishes on
        // the common rays, and is strictly negative on the other cone's
        // non-common rays proves the pair meets exactly in the common face:
        // a shared point has nonnegative value from the first cone and
        // nonpositive value from the second, with zero forcing its
        // coordinates onto the common rays. Candidate functionals come from
        // the first cone's dual rows (each is nonnegative on the whole
        // cone): the sum of the non-common rows, then each such row alone.
        const DUAL_BOUND: i64 = 1 << 40;
        const COORD_BOUND: i64 = 1 << 20;
        let nrays = self.rays.len();
        let small_rays: Option<Vec<Vec<i64>>> = self
            .rays
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .map(|x| i64::try_from(x).ok().filter(|v| v.abs() < COORD_BOUND))
                    .collect::<Option<Vec<i64>>>()
            })
            .collect();
        let masks: Option<Vec<u128>> = (nrays <= 128).then(|| {
            self.max_cones
                .iter()
                .map(|c| c.rays().iter().fold(0u128, |m, &r| m | (1u128 << r)))
                .collect()
        });
        let tables: Option<Vec<Option<Vec<i128>>>> = match (&masks, &small_rays) {
            (Some(_), Some(rays_i64)) => Some(
                duals
                    .par_iter()
                    .map(|d| {
                        let rows = d.as_ref()?;
                        let mut table = Vec::with_capacity(rows.len() * nrays);
                        for row in rows {
                            let row_i64: Option<Vec<i64>> = row
                                .iter()
                                .map(|x| i64::try_from(x).ok().filter(|v| v.abs() < DUAL_BOUND))
                                .collect();
                            let row_i64 = row_i64?;
                            for coords in rays_i64 {
                                table.push(
                                    row_i64
                                        .iter()
                                        .zip(coords)
                                        .map(|(a, b)| i128::from(*a) * i128::from(*b))
                                        .sum(),
                                );
                            }
                        }
                        Some(table)
                    })
                    .collect(),
            ),
            _ => None,
        };

        // Complete one-directional decision when `from` is full-dimensional:
        // the pair meets in exactly its common face iff some nonnegative
        // combination of `from`'s non-common dual rows is strictly negative
        // on every non-common ray of `to`. (If such a functional exists, a
        // shared point has nonnegative value from one side and nonpositive
        // from the other, zero forcing it onto the common rays; conversely a
        // valid pair always has a separating functional of this shape by the
        // fan separation lemma.) The sum of rows is tried first as a cheap
        // certificate; otherwise a tiny exact simplex decides.
        #[derive(Clone, Copy, PartialEq)]
        enum Verdict {
            Valid,
            Violation,
            Unknown,
        }
        let table_verdict = |from: usize, to: usize, common: u128| -> Verdict {
            let Some(tables) = &tables else {
                return Verdict::Unknown;
            };
            let Some(table) = &tables[from] else {
                return Verdict::Unknown;
            };
            let from_cone = self.max_cones[from].rays();
            let to_rays: Vec<usize> = self.max_cones[to]
                .rays()
                .iter()
                .copied()
                .filter(|&r| common & (1u128 << r) == 0)
                .collect();
            let active: Vec<usize> = (0..from_cone.len())
                .filter(|&k| common & (1u128 << from_cone[k]) == 0)
                .collect();
            if to_rays
                .iter()
                .all(|&r| active.iter().map(|&k| table[k * nrays + r]).sum::<i128>() < 0)
            {
                return Verdict::Valid;
            }
            let constraints: Vec<Vec<i128>> = to_rays
                .iter()
                .map(|&r| active.iter().map(|&k| -table[k * nrays + r]).collect())
                .collect();
            match lp::nonneg_solution_dominates(&constraints) {
                Some(true) => Verdict::Valid,
                Some(false) => Verdict::Violation,
                None => Verdict::Unknown,
            }
        };

        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut local = Vec::new();
                for j in i + 1..n {
                    if let Some(masks) = &masks {
                        let common = masks[i] & masks[j];
                        if common == masks[i] || common == masks[j] {
                            local.push(format!(
                                "maximal cone {i} and {j}: one contains the other"
                            ));
                            continue;
                        }
                        let mut verdict = table_verdict(i, j, common);
                        if verdict == Verdict::Unknown {
                            verdict = table_verdict(j, i, common);
                        }
                        match verdict {
                            Verdict::Valid => continue,
                            Verdict::Violation => {
                                local.push(format!(
                                    "maximal cones {i} and {j} overlap beyond their common face"
                                ));
                                continue;
                            }
                            Verdict::Unknown => {
                                if tables.is_some() {
                                    if let Some(msg) = self.pair_lp_violation(i, j, common) {
                                        local.push(msg);
                                    }
                                    continue;
                                }
                            }
                        }
                    }
                    if let Some(msg) = self.check_pair(i, j, &duals) {
                        local.push(msg);
                    }
                }
                local
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    }

    /// Exact fallback for one pair: is there a nonzero common point whose
    /// unique simplicial coordinates use a ray outside the common face?
    fn pair_lp_violation(&self, i: usize, j: usize, common: u128) -> Option<String> {
        let c = &self.max_cones[i];
        let d = &self.max_cones[j];
        let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(c.dim() + d.dim());
        let mut must_use = Vec::with_capacity(c.dim() + d.dim());
        for &r in c.rays() {
            columns.push(self.rays[r].coords().to_vec());
            must_use.push(common & (1u128 << r) == 0);
        }
        for &r in d.rays() {
            columns.push(self.rays[r].coords().iter().map(|x| -x).collect());
            must_use.push(common & (1u128 << r) == 0);
        }
        if lp::zero_combination_using(&columns, &must_use) {
            Some(format!(
                "maximal cones {i} and {j} overlap beyond their common face"
            ))
        } else {
            None
        }
    }

    fn check_pair(
        &self,
        i: usize,
        j: usize,
        duals: &[Option<Vec<Vec<BigInt>>>],
    ) -> Option<String> {
        let c = &self.max_cones[i];
        let d = &self.max_cones[j];
        let common = c.intersection(d);
        if common.dim() == c.dim() || common.dim() == d.dim() {
            return Some(format!("maximal cone {i} and {j}: one contains the other"));
        }

        // Fast path: a functional that is >= 0 on one cone and < 0 exactly on
        // the other cone's non-common rays proves the pair meets in the
        // common face.
        let certified = |from: usize, to: usize| -> bool {
            let Some(dual) = &duals[from] else { return false };
            let fc = &self.max_cones[from];
            let tc = &self.max_cones[to];
            let mut ell = vec![BigInt::zero(); self.rank];
            for (k, &ray) in fc.rays().iter().enumerate() {
                if !common.contains_ray(ray) {
                    for (x, y) in ell.iter_mut().zip(&dual[k]) {
                        *x += y;
                    }
                }
            }
            tc.rays()
                .iter()
                .filter(|&&r| !common.contains_ray(r))
                .all(|&r| self.rays[r].dot(&ell).is_negative())
        };
        if certified(i, j) || certified(j, i) {
            return None;
        }

        // Exact fallback: is there a nonzero common point whose (unique)
        // simplicial coordinates use a non-common ray?
        let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(c.dim() + d.dim());
        let mut must_use = Vec::with_capacity(c.dim() + d.dim());
        for &r in c.rays() {
            columns.push(self.rays[r].coords().to_vec());
            must_use.push(!common.contains_ray(r));
        }
        for &r in d.rays() {
            columns.push(self.rays[r].coords().iter().map(|x| -x).collect());
            must_use.push(!common.contains_ray(r));
        }
        if lp::zero_combination_using(&columns, &must_use) {
            Some(format!(
                "maximal cones {i} and {j} overlap beyond their common face"
            ))
        } else {
            None
        }
    }
}

/// Canonical form of a fan: the comparison and serialization currency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFan {
    pub rank: usize,
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<Vec<usize>>,
    pub labels: Vec<Option<Label>>,
}

/// Geometric equality after canonical normalization: identical ray sets and
/// maximal-cone sets. Labels are presentational and do not participate.
pub fn fan_equal(a: &Fan, b: &Fan) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let ca = a.canonical();
    let cb = b.canonical();
    ca.rays == cb.rays && ca.max_cones == cb.max_cones
}

/// The complete fan of the standard simplex on the ordered ground set `S`
/// (`|S| >= 2`), realized in the quotient convention: ray `k` is the image of
/// the `k`-th standard basis vector, so the final ray is `(-1, ..., -1)`, and
/// ray `k` carries the `k`-th label of `S`.
pub fn simplex_fan(ground: &[Label]) -> Result<Fan> {
    let m = ground.len();
    if m < 2 {
        return Err(Error::GroundTooSmall { got: m });
    }
    let mut sorted = ground.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != m {
        return Err(Error::invalid("ground set contains a repeated label"));
    }
    let rank = m - 1;
    let mut rays = Vec::with_capacity(m);
    for k in 0..rank {
        let coords: Vec<BigInt> = (0..rank)
            .map(|i| if i == k { BigInt::one() } else { BigInt::zero() })
            .collect();
        rays.push(LatticeVector::primitive(coords)?);
    }
    rays.push(LatticeVector::primitive(vec![-BigInt::one(); rank])?);
    let max_cones = (0..m)
        .map(|omit| {
            Cone::new((0..m).filter(|&i| i != omit).collect()).expect("distinct indices")
        })
        .collect();
    let labels = sorted.into_iter().enumerate().collect();
    Fan::from_parts(rank, rays, max_cones, labels)
}

/// `d`-fold product of the simplex fan on `ground`, with factor `k`
/// relabeling ground element `i` as `i:k` (`k` from 1 to `d`).
pub fn labeled_simplex_power(ground: &[Label], d: usize) -> Result<Fan> {
    if d == 0 {
        return Err(Error::invalid("need at least one product factor"));
    }
    let mut result: Option<Fan> = None;
    for k in 1..=d {
        let factor = simplex_fan(ground)?;
        let labels = factor
            .labels()
            .iter()
            .map(|(&i, &l)| match l {
                Label::Simple(v) => Ok((i, Label::Pair(v, k as u32))),
                Label::Pair(..) => Err(Error::invalid(
                    "product factors require plain integer ground labels",
                )),
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let factor = Fan::from_parts(
            factor.rank(),
            factor.rays().to_vec(),
            factor.max_cones().to_vec(),
            labels,
        )?;
        result = Some(match result {
            None => factor,
            Some(acc) => acc.product(&factor),
        });
    }
    Ok(result.expect("d >= 1"))
}

/// Convenience: all distinct sorted cones seen as a set, for tests.
pub fn cone_set(fan: &Fan) -> HashSet<Vec<usize>> {
    fan.all_cones()
        .into_iter()
        .map(|c| c.rays().to_vec())
        .collect()
}
