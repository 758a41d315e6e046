//! Verification harness: equality of the weighted blow-up fan with the
//! symmetric-power nested fan, the star/join intersection law, and the
//! weight-arithmetic reduction reports.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{fan_equal, simplex_fan, Cone, Fan, Label};
use crate::moduli::blowup::blowup_fan;
use crate::moduli::stability::{is_toric_chamber, promoted_subsets};
use crate::moduli::weights::{losev_manin_weights, weight_floor, WeightVector};
use crate::nestohedra::{
    complete_building_set, nested_fan, sym_fan, sym_product_building_set, BuildingSet,
};

/// One named pass/fail line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A verification report: the instance it describes plus its check lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub instance: String,
    pub checks: Vec<CheckItem>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn tail_labels(d: usize, n: usize) -> Vec<Label> {
    ((d + 2) as u32..=n as u32).map(Label::Simple).collect()
}

/// The symmetric-power side of the blow-up comparison: the nested fan of the
/// `d`-fold duplicated promoted subsets over the product of tail simplices.
pub fn sym_side_fan(w: &WeightVector) -> Result<Fan> {
    if !is_toric_chamber(w) {
        return Err(Error::invalid(
            "weight lies outside the toric chamber: tail weights sum over 1",
        ));
    }
    let ground = tail_labels(w.d(), w.n());
    let family: BTreeSet<BTreeSet<Label>> = promoted_subsets(w)
        .into_iter()
        .map(|s| s.into_iter().map(Label::Simple).collect())
        .collect();
    let b = sym_product_building_set(&ground, &family, w.d())?;
    nested_fan(&b)
}

/// Does the blow-up fan of the equal-tail weight agree with the symmetric
/// power of the complete building set on the tail?
pub fn verify_thm1(d: usize, n: usize) -> Result<bool> {
    let w = losev_manin_weights(d, n)?;
    let left = blowup_fan(&w)?;
    let ground = tail_labels(d, n);
    let right = sym_fan(&complete_building_set(ground)?, d)?;
    Ok(fan_equal(&left, &right))
}

/// Does the blow-up fan of a toric-chamber weight agree with the symmetric
/// power of the building set it induces?
pub fn verify_thm2(w: &WeightVector) -> Result<bool> {
    let left = blowup_fan(w)?;
    let right = sym_side_fan(w)?;
    Ok(fan_equal(&left, &right))
}

/// Above this cone count the star/join law is checked through the face
/// lattice with stratified operator samples instead of one operator call per
/// cone pair.
const EXHAUSTIVE_PAIR_LIMIT: usize = 2000;

/// Cones sampled per fan in the large tier.
const LARGE_TIER_SAMPLE: usize = 160;

fn ray_mask(cone: &Cone) -> u128 {
    cone.rays().iter().fold(0u128, |m, &r| m | (1u128 << r))
}

fn sorted_masks(cones: &[Cone]) -> Vec<u128> {
    let mut masks: Vec<u128> = cones.iter().map(ray_mask).collect();
    masks.sort_unstable();
    masks
}

/// Does the sorted intersection of `a` and `b` equal `expect`?
fn intersection_equals(a: &[u128], b: &[u128], expect: &[u128]) -> bool {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if k >= expect.len() || expect[k] != a[i] {
                    return false;
                }
                i += 1;
                j += 1;
                k += 1;
            }
        }
    }
    k == expect.len()
}

/// Star/join intersection law: for every pair of cones, the cones meeting
/// both stars are exactly the star of the join, and no cone meets both stars
/// when the join does not exist.
///
/// Small fans get one operator call per cone pair. Larger fans are checked
/// through the face lattice — membership masks over the maximal cones make
/// the pair identity a consequence of per-cone star correctness — with the
/// operators themselves exercised on a deterministic stratified sample.
pub fn verify_lemma_join(fan: &Fan) -> Result<bool> {
    if fan.rays().len() >= 128 {
        return Err(Error::invalid(
            "star/join sweep supports fans with fewer than 128 rays",
        ));
    }
    let cones = fan.all_cones();
    let nc = cones.len();
    let masks: Vec<u128> = cones.iter().map(ray_mask).collect();
    let position: HashMap<u128, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    if position.len() != nc {
        return Err(Error::internal("duplicate cone in face enumeration"));
    }

    // Membership of each cone in each maximal cone, as bit words.
    let max_masks: Vec<u128> = fan.max_cones().iter().map(ray_mask).collect();
    let words = max_masks.len().div_ceil(64);
    let membership: Vec<Vec<u64>> = masks
        .iter()
        .map(|&m| {
            let mut row = vec![0u64; words];
            for (j, &mm) in max_masks.iter().enumerate() {
                if m & mm == m {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    if membership.iter().any(|row| row.iter().all(|&w| w == 0)) {
        return Err(Error::internal("cone outside every maximal cone"));
    }

    if nc <= EXHAUSTIVE_PAIR_LIMIT {
        let stars: Vec<Vec<u128>> = cones
            .par_iter()
            .map(|c| Ok(sorted_masks(&fan.star(c)?)))
            .collect::<Result<_>>()?;
        let ok = (0..nc).into_par_iter().try_fold(
            || true,
            |acc, i| -> Result<bool> {
                if !acc {
                    return Ok(false);
                }
                for j in i..nc {
                    let joined = fan.join(&cones[i], &cones[j])?;
                    let fine = match joined {
                        Some(jc) => match position.get(&ray_mask(&jc)) {
                            Some(&p) => intersection_equals(&stars[i], &stars[j], &stars[p]),
                            None => false,
                        },
                        None => intersection_equals(&stars[i], &stars[j], &[]),
                    };
                    if !fine {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        );
        return ok.try_reduce(|| true, |a, b| Ok(a && b));
    }

    // Large tier. The pair identity factors: star(σ) is the up-set of σ, so
    // star(σ) ∩ star(τ) is the up-set of σ∪τ when some maximal cone holds
    // both and is empty otherwise. Verify the up-set reading of star() on a
    // stratified cone sample, the join operator on all sampled pairs, and the
    // membership algebra for every sampled pair.
    let stride = nc.div_ceil(LARGE_TIER_SAMPLE);
    let mut sample: Vec<usize> = (0..nc).step_by(stride.max(1)).collect();
    for (i, c) in cones.iter().enumerate() {
        if c.dim() == 0 || c.dim() >= fan.rank() {
            sample.push(i);
        }
    }
    sample.sort_unstable();
    sample.dedup();

    let star_ok = sample
        .par_iter()
        .map(|&i| -> Result<bool> {
            let api = sorted_masks(&fan.star(&cones[i])?);
            let model: Vec<u128> = {
                let mut up: Vec<u128> = masks
                    .iter()
                    .copied()
                    .filter(|&m| m & masks[i] == masks[i])
                    .collect();
                up.sort_unstable();
                up
            };
            Ok(api == model)
        })
        .try_reduce(|| true, |a, b| Ok(a && b))?;
    if !star_ok {
        return Ok(false);
    }

    let pair_ok = sample
        .par_iter()
        .map(|&i| -> Result<bool> {
            for &j in &sample {
                if j < i {
                    continue;
                }
                let meet_words: Vec<u64> = membership[i]
                    .iter()
                    .zip(&membership[j])
                    .map(|(a, b)| a & b)
                    .collect();
                let meets = meet_words.iter().any(|&w| w != 0);
                let joined = fan.join(&cones[i], &cones[j])?;
                match joined {
                    Some(jc) => {
                        let p = match position.get(&ray_mask(&jc)) {
                            Some(&p) => p,
                            None => return Ok(false),
                        };
                        if !meets || membership[p] != meet_words {
                            return Ok(false);
                        }
                    }
                    None => {
                        if meets || position.contains_key(&(masks[i] | masks[j])) {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        })
        .try_reduce(|| true, |a, b| Ok(a && b))?;
    Ok(pair_ok)
}

/// The induced weight on `n - d + 1` points of the line: a full unit followed
/// by the weights of the pivot and the tail.
pub fn hassett_prime_weights(w: &WeightVector) -> Result<Vec<BigRational>> {
    if !is_toric_chamber(w) {
        return Err(Error::invalid(
            "weight lies outside the toric chamber: tail weights sum over 1",
        ));
    }
    let mut out = vec![BigRational::one()];
    out.extend(w.entries()[w.d()..].iter().cloned());
    Ok(out)
}

/// All nonempty index subsets (1-based) whose entries sum to at most 1. Two
/// weight vectors lie in the same coarse chamber exactly when these families
/// coincide.
pub fn chamber_signature(v: &[BigRational]) -> BTreeSet<BTreeSet<usize>> {
    let one = BigRational::one();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << v.len()) {
        let subset: BTreeSet<usize> = (0..v.len()).filter(|k| mask >> k & 1 == 1).collect();
        let sum: BigRational = subset.iter().map(|&k| &v[k]).sum();
        if sum <= one {
            out.insert(subset.into_iter().map(|k| k + 1).collect());
        }
    }
    out
}

/// The equal-tail weight shape on `m` points of the line: two full units, the
/// rest sharing one unit equally.
pub fn lm_type_weights(m: usize) -> Result<Vec<BigRational>> {
    if m < 3 {
        return Err(Error::invalid(
            "an equal-tail line weight needs at least three points",
        ));
    }
    let mut v = vec![BigRational::one(), BigRational::one()];
    let share = BigRational::new(BigInt::one(), BigInt::from((m - 2) as i64));
    v.extend(std::iter::repeat(share).take(m - 2));
    Ok(v)
}

fn format_weights(v: &[BigRational]) -> String {
    let entries: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", entries.join(", "))
}

fn dominance_check(name: &str, lower: &[BigRational], mid: &[BigRational], upper: &[BigRational]) -> CheckItem {
    let mut failures = Vec::new();
    for (k, ((lo, m), up)) in lower.iter().zip(mid).zip(upper).enumerate() {
        if lo > m {
            failures.push(format!("position {}: {} > {}", k + 1, lo, m));
        }
        if m > up {
            failures.push(format!("position {}: {} > {}", k + 1, m, up));
        }
    }
    CheckItem {
        name: name.to_string(),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{} <= {} <= {} componentwise",
                format_weights(lower),
                format_weights(mid),
                format_weights(upper)
            )
        } else {
            failures.join("; ")
        },
    }
}

fn chamber_check(name: &str, v: &[BigRational]) -> CheckItem {
    let reference = match lm_type_weights(v.len()) {
        Ok(r) => r,
        Err(e) => {
            return CheckItem {
                name: name.to_string(),
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let sig_v = chamber_signature(v);
    let sig_ref = chamber_signature(&reference);
    if sig_v == sig_ref {
        CheckItem {
            name: name.to_string(),
            pass: true,
            detail: format!(
                "{} shares its light-subset family ({} subsets) with {}",
                format_weights(v),
                sig_v.len(),
                format_weights(&reference)
            ),
        }
    } else {
        let only_v: Vec<String> = sig_v.difference(&sig_ref).map(|s| format!("{s:?}")).collect();
        let only_ref: Vec<String> = sig_ref.difference(&sig_v).map(|s| format!("{s:?}")).collect();
        CheckItem {
            name: name.to_string(),
            pass: false,
            detail: format!(
                "{} vs {}: light only here {:?}, light only there {:?}",
                format_weights(v),
                format_weights(&reference),
                only_v,
                only_ref
            ),
        }
    }
}

/// Exact-arithmetic report on the reduction to a line configuration: the
/// excess-weight bound, the floor-dominance chain under both tail-share
/// readings, and the coarse-chamber comparison under both index readings.
/// Failures are reported, never asserted.
pub fn verify_thm3_part1(w: &WeightVector) -> Result<CheckReport> {
    if !is_toric_chamber(w) {
        return Err(Error::invalid(
            "weight lies outside the toric chamber: tail weights sum over 1",
        ));
    }
    let d = w.d();
    let n = w.n();
    let mut checks = Vec::new();

    let total: BigRational =
        BigRational::one() + w.entries()[d..].iter().sum::<BigRational>();
    let two = BigRational::from_integer(2.into());
    checks.push(CheckItem {
        name: "excess-over-two".into(),
        pass: total > two,
        detail: format!("1 + a_{} + ... + a_{} = {}", d + 1, n, total),
    });

    let floor = weight_floor(d, n)?;
    let mid: Vec<BigRational> = std::iter::once(BigRational::one())
        .chain(floor[d..].iter().cloned())
        .collect();
    let upper = hassett_prime_weights(w)?;
    for (label, share_den) in [("1/(n-2)", n - 2), ("1/(n-d-1)", n - d - 1)] {
        let share = BigRational::new(BigInt::one(), BigInt::from(share_den as i64));
        let lower: Vec<BigRational> = std::iter::once(BigRational::one())
            .chain(std::iter::repeat(share).take(n - d))
            .collect();
        checks.push(dominance_check(
            &format!("floor-dominance[{label}]"),
            &lower,
            &mid,
            &upper,
        ));
    }

    let literal: Vec<BigRational> = [BigRational::one(), BigRational::one()]
        .into_iter()
        .chain(w.entries()[(d + 2).min(n)..].iter().cloned())
        .collect();
    checks.push(chamber_check("coarse-chamber[tail-from-d+3]", &literal));
    let variant: Vec<BigRational> = [BigRational::one(), BigRational::one()]
        .into_iter()
        .chain(w.entries()[d + 1..].iter().cloned())
        .collect();
    checks.push(chamber_check("coarse-chamber[tail-from-d+2]", &variant));

    Ok(CheckReport {
        instance: format!("d={} n={} a={}", d, n, format_weights(w.entries())),
        checks,
    })
}

/// The note replacing the report when `(d, n) = (1, 3)`: that configuration
/// space compactifies to the projective line for every weight choice.
pub fn small_case_note(d: usize, n: usize) -> Option<String> {
    if d == 1 && n == 3 {
        Some("the compactified space is the projective line for every weight vector; nothing to check".into())
    } else {
        None
    }
}

/// Coarsening-chain check for the induced building set: its nested fan is a
/// valid unimodular fan sitting between the tail simplex fan and the
/// permutohedral fan in the refinement order.
pub fn verify_thm3_part2(w: &WeightVector) -> Result<bool> {
    let b: BuildingSet = crate::moduli::stability::induced_building_set(w)?;
    let nf = nested_fan(&b)?;
    if !nf.validate().is_valid() || !nf.is_unimodular() {
        return Ok(false);
    }
    let ground = tail_labels(w.d(), w.n());
    let simplex = simplex_fan(&ground)?;
    if !nf.refines(&simplex)? {
        return Ok(false);
    }
    let permutohedral = nested_fan(&complete_building_set(ground)?)?;
    Ok(permutohedral.refines(&nf)?)
}
