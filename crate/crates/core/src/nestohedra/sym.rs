//! Symmetric powers of building sets: duplicate every member across `d`
//! copies of the ground set and work over the `d`-fold product of the
//! simplex fan, so one subdivision of the product encodes the simultaneous
//! truncation in all factors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{labeled_simplex_power, Fan, Label, LatticeVector};
use crate::nestohedra::building::BuildingSet;
use crate::nestohedra::nested::nested_fan;

fn simple_ids(ground: &[Label]) -> Result<Vec<u32>> {
    ground
        .iter()
        .map(|l| match l {
            Label::Simple(i) => Ok(*i),
            Label::Pair(..) => Err(Error::invalid(
                "symmetric powers require a plain integer ground set",
            )),
        })
        .collect()
}

/// The building set on the duplicated ground `{(i,k)}` over the `d`-fold
/// labeled product of the simplex fan on `ground`: all singletons, plus the
/// duplicated member `I^(d) = {(i,k) : i in I, k in 1..=d}` for every proper
/// `I` in `family`. The improper member (the full ground) would index an
/// empty face and is dropped by the same rule that drops it for `d = 1`.
pub fn sym_product_building_set(
    ground: &[Label],
    family: &BTreeSet<BTreeSet<Label>>,
    d: usize,
) -> Result<BuildingSet> {
    if d == 0 {
        return Err(Error::invalid("need at least one symmetric factor"));
    }
    let ids = simple_ids(ground)?;
    let reference = labeled_simplex_power(ground, d)?;
    let mut members: BTreeSet<BTreeSet<Label>> = BTreeSet::new();
    let mut product_ground = Vec::new();
    for &i in &ids {
        for k in 1..=d {
            let l = Label::Pair(i, k as u32);
            product_ground.push(l);
            members.insert(BTreeSet::from([l]));
        }
    }
    let ground_set: BTreeSet<Label> = ground.iter().copied().collect();
    for member in family {
        if !member.is_subset(&ground_set) {
            return Err(Error::invalid(
                "family member is not a subset of the ground set",
            ));
        }
        if member.is_empty() || member.len() >= ground.len() {
            continue;
        }
        let duplicated: BTreeSet<Label> = member
            .iter()
            .flat_map(|l| {
                let Label::Simple(i) = l else { unreachable!("checked above") };
                (1..=d).map(move |k| Label::Pair(*i, k as u32))
            })
            .collect();
        members.insert(duplicated);
    }
    BuildingSet::over_polytope(product_ground, members, reference)
}

/// The `d`-th symmetric power of a connected plain building set.
pub fn sym_building_set(b: &BuildingSet, d: usize) -> Result<BuildingSet> {
    if !b.is_plain() {
        return Err(Error::invalid(
            "symmetric powers are defined for plain building sets",
        ));
    }
    if !b.is_connected() {
        return Err(Error::invalid(
            "symmetric powers are defined for connected building sets",
        ));
    }
    sym_product_building_set(b.ground(), b.members(), d)
}

/// The nested fan of the `d`-th symmetric power of `b`.
pub fn sym_fan(b: &BuildingSet, d: usize) -> Result<Fan> {
    nested_fan(&sym_building_set(b, d)?)
}

/// Does the diagonal embedding `v -> (v,...,v)` carry each member's
/// barycenter ray in the simplex fan to the corresponding barycenter ray in
/// the symmetric-power fan, and is that ray actually present there?
pub fn diagonal_compatibility_check(b: &BuildingSet, d: usize) -> Result<bool> {
    let sym = sym_fan(b, d)?;
    let base = b.base_fan()?;
    let index = base.label_index()?;
    let sym_index = sym.label_index()?;
    for member in b.members() {
        if member.len() >= b.ground().len() || member.len() * d < 2 {
            continue;
        }
        let rays: Vec<&LatticeVector> = member
            .iter()
            .map(|l| &base.rays()[index[l]])
            .collect();
        let barycenter = LatticeVector::primitive(LatticeVector::raw_sum(rays))?;
        let diagonal = barycenter.diagonal(d);

        let Label::Simple(_) = member.iter().next().expect("nonempty member") else {
            return Err(Error::invalid("plain ground set required"));
        };
        let mut duplicated = Vec::with_capacity(member.len() * d);
        for l in member {
            let Label::Simple(i) = l else { unreachable!() };
            for k in 1..=d {
                duplicated.push(sym_index[&Label::Pair(*i, k as u32)]);
            }
        }
        let duplicated_sum = LatticeVector::primitive(LatticeVector::raw_sum(
            duplicated.iter().map(|&r| &sym.rays()[r]),
        ))?;
        if duplicated_sum != diagonal || !sym.rays().contains(&diagonal) {
            return Ok(false);
        }
    }
    Ok(true)
}
