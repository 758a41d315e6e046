//! Nested fans: iterated stellar subdivision of a base fan at the cones
//! spanned by a building set's members, larger members first.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{fan_equal, Cone, Fan, Label};
use crate::nestohedra::building::BuildingSet;

/// The members that actually cause a subdivision, in construction order:
/// non-singleton members whose rays span a cone of the base fan, sizes
/// non-increasing, ties broken lexicographically on the sorted label lists.
pub fn subdivision_schedule(b: &BuildingSet) -> Result<Vec<BTreeSet<Label>>> {
    let mut scheduled = Vec::new();
    for m in b.members() {
        if m.len() >= 2 && b.face_is_nonempty(m)? {
            scheduled.push(m.clone());
        }
    }
    sort_schedule(&mut scheduled);
    Ok(scheduled)
}

fn sort_schedule(schedule: &mut [BTreeSet<Label>]) {
    schedule.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| a.iter().cmp(b.iter()))
    });
}

fn is_valid_order(schedule: &[BTreeSet<Label>]) -> bool {
    schedule.windows(2).all(|w| w[0].len() >= w[1].len())
}

fn apply_schedule(b: &BuildingSet, schedule: &[BTreeSet<Label>]) -> Result<Fan> {
    let base = b.base_fan()?;
    let index: HashMap<Label, usize> = base.label_index()?;
    let mut fan = base;
    for member in schedule {
        let mut rays = Vec::with_capacity(member.len());
        for l in member {
            rays.push(*index.get(l).ok_or_else(|| {
                Error::invalid(format!("member label {l} names no ray of the base fan"))
            })?);
        }
        let sigma = Cone::new(rays)?;
        if !fan.contains_cone(&sigma)? {
            // The descending-size order guarantees a scheduled cone is never
            // destroyed before its turn; reaching this line is a bug.
            return Err(Error::internal(format!(
                "scheduled cone for member of size {} vanished mid-construction",
                member.len()
            )));
        }
        fan = fan.star_subdivision(&sigma)?;
    }
    Ok(fan)
}

/// The nested fan of `b`: subdivide the base fan at every scheduled member.
/// The building set must validate cleanly.
pub fn nested_fan(b: &BuildingSet) -> Result<Fan> {
    let report = b.validate()?;
    if !report.is_valid() {
        return Err(Error::invalid(format!(
            "building set fails validation: {}",
            report.violations.join("; ")
        )));
    }
    apply_schedule(b, &subdivision_schedule(b)?)
}

/// The nested fan built along an explicit order, which must be a
/// non-increasing-size permutation of the canonical schedule.
pub fn nested_fan_with_schedule(b: &BuildingSet, schedule: &[BTreeSet<Label>]) -> Result<Fan> {
    let mut canonical = subdivision_schedule(b)?;
    let mut given = schedule.to_vec();
    sort_schedule(&mut given);
    sort_schedule(&mut canonical);
    if given != canonical {
        return Err(Error::invalid(
            "schedule is not a permutation of the subdividing members",
        ));
    }
    if !is_valid_order(schedule) {
        return Err(Error::invalid("schedule sizes must be non-increasing"));
    }
    apply_schedule(b, schedule)
}

/// Number of valid schedules: the product of factorials of the same-size
/// group counts.
pub fn schedule_count(b: &BuildingSet) -> Result<BigUint> {
    let schedule = subdivision_schedule(b)?;
    let mut count = BigUint::one();
    for (_, group) in &schedule.iter().chunk_by(|m| m.len()) {
        let k = group.count();
        for f in 2..=k {
            count *= BigUint::from(f);
        }
    }
    Ok(count)
}

/// Check that the nested fan does not depend on the schedule. With at most
/// 5000 valid schedules every one is tried; beyond that, `trials` random
/// schedules drawn from the seeded generator are compared instead.
pub fn order_independence_check(b: &BuildingSet, trials: usize, seed: u64) -> Result<bool> {
    let reference = nested_fan(b)?;
    let schedule = subdivision_schedule(b)?;
    if schedule.is_empty() {
        return Ok(true);
    }
    let blocks: Vec<Vec<BTreeSet<Label>>> = schedule
        .iter()
        .chunk_by(|m| m.len())
        .into_iter()
        .map(|(_, g)| g.cloned().collect())
        .collect();

    if schedule_count(b)? <= BigUint::from(5000u32) {
        // Exhaustive: every interleaving of within-block permutations.
        let per_block: Vec<Vec<Vec<BTreeSet<Label>>>> = blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .cloned()
                    .permutations(block.len())
                    .collect::<Vec<_>>()
            })
            .collect();
        for choice in per_block.iter().multi_cartesian_product() {
            let order: Vec<BTreeSet<Label>> =
                choice.into_iter().flatten().cloned().collect();
            if !fan_equal(&reference, &apply_schedule(b, &order)?) {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let mut order = Vec::with_capacity(schedule.len());
            for block in &blocks {
                let mut shuffled = block.clone();
                shuffled.shuffle(&mut rng);
                order.extend(shuffled);
            }
            if !fan_equal(&reference, &apply_schedule(b, &order)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
