//! The iterated stellar subdivision a weight vector prescribes on the product
//! of tail simplices.
//!
//! The ambient model is the `d`-fold labeled product of the simplex fan on
//! the tail labels `{d+2, …, n}`; factor `k` carries the labels `(i, k)`.
//! Every heavy locus `I` contains the pivot point `d+1` inside the toric
//! chamber, and its center is the cone on the rays `{(i, k) : i ∈ I∖{d+1}}`.
//! Centers are subdivided from the largest locus down, ties in lexicographic
//! order.

use crate::error::{Error, Result};
use crate::geometry::{labeled_simplex_power, Fan, Label};
use crate::moduli::stability::{heavy_loci, is_toric_chamber, LocusIndex};
use crate::moduli::weights::WeightVector;

/// The canonical center order: descending locus size, ties lexicographic.
pub fn center_schedule(w: &WeightVector) -> Result<Vec<LocusIndex>> {
    if !is_toric_chamber(w) {
        return Err(Error::invalid(
            "weight lies outside the toric chamber: tail weights sum over 1",
        ));
    }
    let mut centers: Vec<LocusIndex> = heavy_loci(w).into_iter().collect();
    for center in &centers {
        if !center.contains((w.d() + 1) as u32) {
            return Err(Error::internal(format!(
                "toric-chamber locus {center} misses point {}",
                w.d() + 1
            )));
        }
    }
    centers.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(centers)
}

fn apply_centers(w: &WeightVector, centers: &[LocusIndex]) -> Result<Fan> {
    let d = w.d();
    let ground: Vec<Label> = ((d + 2) as u32..=w.n() as u32).map(Label::Simple).collect();
    let base = labeled_simplex_power(&ground, d)?;
    let index = base.label_index()?;
    let mut fan = base;
    for center in centers {
        let mut rays: Vec<usize> = Vec::with_capacity(center.len().saturating_sub(1) * d);
        for &i in center.indices() {
            if i as usize == d + 1 {
                continue;
            }
            for k in 1..=d {
                rays.push(index[&Label::Pair(i, k as u32)]);
            }
        }
        rays.sort_unstable();
        let cone = fan.lookup_cone(&rays)?.ok_or_else(|| {
            Error::internal(format!("blow-up center {center} vanished mid-construction"))
        })?;
        fan = fan.star_subdivision(&cone)?;
    }
    Ok(fan)
}

/// The fan of the weighted compactification: the labeled product of tail
/// simplices, subdivided at every heavy-locus center in canonical order.
pub fn blowup_fan(w: &WeightVector) -> Result<Fan> {
    let centers = center_schedule(w)?;
    apply_centers(w, &centers)
}

/// Like [`blowup_fan`], but with an explicit center order. The order must be
/// a permutation of the canonical schedule with non-increasing locus sizes.
pub fn blowup_fan_with_schedule(w: &WeightVector, centers: &[LocusIndex]) -> Result<Fan> {
    let canonical = center_schedule(w)?;
    let mut sorted: Vec<&LocusIndex> = centers.iter().collect();
    sorted.sort();
    let mut reference: Vec<&LocusIndex> = canonical.iter().collect();
    reference.sort();
    if sorted != reference {
        return Err(Error::invalid(
            "center order must be a permutation of the heavy loci",
        ));
    }
    if centers.windows(2).any(|p| p[0].len() < p[1].len()) {
        return Err(Error::invalid(
            "center order must have non-increasing locus sizes",
        ));
    }
    apply_centers(w, centers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{fan_equal, LatticeVector};
    use crate::moduli::weights::losev_manin_weights;
    use crate::nestohedra::{complete_building_set, nested_fan};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use std::collections::BTreeSet;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn weight(d: usize, n: usize, entries: &[(i64, i64)]) -> WeightVector {
        let a = entries.iter().map(|&(p, q)| ratio(p, q)).collect();
        WeightVector::new(d, n, a).unwrap()
    }

    fn ray_set(fan: &Fan) -> BTreeSet<Vec<i64>> {
        fan.rays()
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .map(|c| i64::try_from(c).unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn planar_losev_manin_fan_is_the_hexagon() {
        let fan = blowup_fan(&losev_manin_weights(2, 5).unwrap()).unwrap();
        assert_eq!(fan.f_vector(), vec![1, 6, 6]);
        let expected: BTreeSet<Vec<i64>> = [
            vec![1, 0],
            vec![-1, 0],
            vec![0, 1],
            vec![0, -1],
            vec![1, 1],
            vec![-1, -1],
        ]
        .into();
        assert_eq!(ray_set(&fan), expected);
    }

    #[test]
    fn line_losev_manin_fan_is_the_permutohedral_fan() {
        let fan = blowup_fan(&losev_manin_weights(1, 5).unwrap()).unwrap();
        assert_eq!(fan.f_vector(), vec![1, 6, 6]);
        let ground: Vec<Label> = [3, 4, 5].map(Label::Simple).into();
        let reference = nested_fan(&complete_building_set(ground).unwrap()).unwrap();
        assert!(fan_equal(&fan, &reference));
    }

    #[test]
    fn no_heavy_loci_leaves_the_product_fan_alone() {
        let w = weight(2, 5, &[(1, 1), (1, 1), (5, 9), (1, 3), (1, 3)]);
        assert!(center_schedule(&w).unwrap().is_empty());
        let fan = blowup_fan(&w).unwrap();
        let ground: Vec<Label> = [4, 5].map(Label::Simple).into();
        let base = labeled_simplex_power(&ground, 2).unwrap();
        assert!(fan_equal(&fan, &base));
    }

    #[test]
    fn ray_count_adds_one_per_center_with_a_subdividable_cone() {
        // For d ≥ 2 every center cone has dimension ≥ 2, so each center
        // contributes exactly one new ray over the d·(n-d-1) product rays.
        let cases = [
            weight(2, 5, &[(1, 1), (1, 1), (1, 1), (1, 2), (1, 2)]),
            weight(2, 6, &[(1, 1), (1, 1), (3, 4), (1, 2), (1, 4), (1, 4)]),
            weight(2, 6, &[(1, 1), (1, 1), (1, 1), (1, 2), (1, 4), (1, 4)]),
            weight(3, 6, &[(1, 1), (1, 1), (1, 1), (1, 1), (1, 2), (1, 2)]),
        ];
        for w in &cases {
            let fan = blowup_fan(w).unwrap();
            let d = w.d();
            let n = w.n();
            assert_eq!(
                fan.rays().len(),
                d * (n - d - 1) + heavy_loci(w).len(),
                "d={d} n={n}"
            );
        }

        // On the line a singleton tail shadow spans a single ray, whose
        // subdivision is the identity, so only larger centers add rays.
        for n in 5..=7usize {
            let w = losev_manin_weights(1, n).unwrap();
            let fan = blowup_fan(&w).unwrap();
            let big_centers = heavy_loci(&w)
                .iter()
                .filter(|c| c.len() >= 3)
                .count();
            assert_eq!(fan.rays().len(), (n - 2) + big_centers);
            assert_eq!(fan.rays().len(), (1 << (n - 2)) - 2);
        }
    }

    #[test]
    fn partial_promotion_gives_ten_rays() {
        let w = weight(2, 6, &[(1, 1), (1, 1), (3, 4), (1, 2), (1, 4), (1, 4)]);
        let fan = blowup_fan(&w).unwrap();
        assert_eq!(fan.rays().len(), 10);
        assert!(fan.is_unimodular());
        assert!(fan.validate().is_valid());
    }

    #[test]
    fn schedule_reorderings_within_a_size_class_agree() {
        let w = weight(2, 6, &[(1, 1), (1, 1), (1, 1), (1, 2), (1, 4), (1, 4)]);
        let canonical = center_schedule(&w).unwrap();
        let reference = blowup_fan(&w).unwrap();

        let mut shuffled = canonical.clone();
        let groups: Vec<usize> = shuffled.iter().map(|c| c.len()).collect();
        let mut start = 0;
        while start < shuffled.len() {
            let end = start + groups[start..].iter().take_while(|&&s| s == groups[start]).count();
            shuffled[start..end].reverse();
            start = end;
        }
        let alt = blowup_fan_with_schedule(&w, &shuffled).unwrap();
        assert!(fan_equal(&alt, &reference));

        let mut ascending = canonical.clone();
        ascending.reverse();
        if ascending.first().map(|c| c.len()) != ascending.last().map(|c| c.len()) {
            assert!(blowup_fan_with_schedule(&w, &ascending).is_err());
        }
    }

    #[test]
    fn non_toric_weights_are_refused() {
        let ones = weight(2, 5, &[(1, 1); 5]);
        assert!(blowup_fan(&ones).is_err());
    }

    #[test]
    fn barycenters_are_primitive_sums_of_center_rays() {
        let fan = blowup_fan(&losev_manin_weights(2, 5).unwrap()).unwrap();
        let diag = LatticeVector::from_i64(&[1, 1]).unwrap();
        assert!(fan.rays().contains(&diag));
    }
}
