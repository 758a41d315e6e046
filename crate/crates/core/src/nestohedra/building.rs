//! Building sets: families of subsets of a labeled ground set that prescribe
//! which faces of an ambient polytope get truncated, i.e. which cones of the
//! ambient fan get subdivided.
//!
//! Two flavors share one type. A *plain* building set lives over the simplex
//! on its ground set and must contain the union of any two overlapping
//! members. A building set *over a polytope* carries a reference fan; members
//! must index nonempty faces (their rays must span a cone of that fan), and
//! the union axiom is only demanded when the union's face is nonempty.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{simplex_fan, Fan, Label};

/// Ambient semantics for a [`BuildingSet`].
#[derive(Debug, Clone)]
pub enum BuildingMode {
    /// Over the simplex on the ground set.
    Plain,
    /// Over an explicit reference fan whose ray labels cover the ground set.
    OverPolytope(Box<Fan>),
}

/// A family of subsets of a labeled ground set, containing every singleton.
#[derive(Debug, Clone)]
pub struct BuildingSet {
    ground: Vec<Label>,
    members: BTreeSet<BTreeSet<Label>>,
    mode: BuildingMode,
}

/// Validation outcome: empty `violations` means the axioms hold.
#[derive(Debug, Clone, Default)]
pub struct BuildingSetValidation {
    pub violations: Vec<String>,
}

impl BuildingSetValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_parts(ground: &[Label], members: &BTreeSet<BTreeSet<Label>>) -> Result<()> {
    if ground.is_empty() {
        return Err(Error::invalid("building set needs a nonempty ground set"));
    }
    let ground_set: BTreeSet<Label> = ground.iter().copied().collect();
    if ground_set.len() != ground.len() {
        return Err(Error::invalid("ground set contains a repeated label"));
    }
    for m in members {
        if m.is_empty() {
            return Err(Error::invalid("building set members must be nonempty"));
        }
        if let Some(stray) = m.iter().find(|l| !ground_set.contains(l)) {
            return Err(Error::invalid(format!(
                "member label {stray} is not in the ground set"
            )));
        }
    }
    Ok(())
}

impl BuildingSet {
    /// Plain building set over the simplex on `ground`. Members are checked
    /// for shape only; the axioms are the business of [`BuildingSet::validate`].
    pub fn plain(ground: Vec<Label>, members: BTreeSet<BTreeSet<Label>>) -> Result<BuildingSet> {
        let mut ground = ground;
        ground.sort();
        check_parts(&ground, &members)?;
        Ok(BuildingSet {
            ground,
            members,
            mode: BuildingMode::Plain,
        })
    }

    /// Building set over the polytope whose fan is `reference`. Every ground
    /// label must name a ray of the reference fan.
    pub fn over_polytope(
        ground: Vec<Label>,
        members: BTreeSet<BTreeSet<Label>>,
        reference: Fan,
    ) -> Result<BuildingSet> {
        let mut ground = ground;
        ground.sort();
        check_parts(&ground, &members)?;
        let index = reference.label_index()?;
        for l in &ground {
            if !index.contains_key(l) {
                return Err(Error::invalid(format!(
                    "ground label {l} does not name a ray of the reference fan"
                )));
            }
        }
        Ok(BuildingSet {
            ground,
            members,
            mode: BuildingMode::OverPolytope(Box::new(reference)),
        })
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }

    pub fn members(&self) -> &BTreeSet<BTreeSet<Label>> {
        &self.members
    }

    pub fn mode(&self) -> &BuildingMode {
        &self.mode
    }

    pub fn is_plain(&self) -> bool {
        matches!(self.mode, BuildingMode::Plain)
    }

    pub fn reference_fan(&self) -> Option<&Fan> {
        match &self.mode {
            BuildingMode::Plain => None,
            BuildingMode::OverPolytope(f) => Some(f),
        }
    }

    /// The ambient fan the nested-fan construction starts from: the simplex
    /// fan of the ground set in plain mode, the reference fan otherwise.
    pub fn base_fan(&self) -> Result<Fan> {
        match &self.mode {
            BuildingMode::Plain => simplex_fan(&self.ground),
            BuildingMode::OverPolytope(f) => Ok((**f).clone()),
        }
    }

    /// Does `subset` index a nonempty face of the ambient polytope, i.e. do
    /// its rays span a cone of the base fan? In plain mode this is exactly
    /// "proper subset of the ground set".
    pub fn face_is_nonempty(&self, subset: &BTreeSet<Label>) -> Result<bool> {
        match &self.mode {
            BuildingMode::Plain => Ok(subset.len() < self.ground.len()),
            BuildingMode::OverPolytope(fan) => {
                let index = fan.label_index()?;
                let mut rays = Vec::with_capacity(subset.len());
                for l in subset {
                    match index.get(l) {
                        Some(&i) => rays.push(i),
                        None => return Ok(false),
                    }
                }
                Ok(fan.lookup_cone(&rays)?.is_some())
            }
        }
    }

    /// Report every axiom violation: missing singletons, members indexing an
    /// empty face (polytope mode), and overlapping pairs whose union is
    /// missing — unconditionally in plain mode, only when the union's face
    /// is nonempty in polytope mode.
    pub fn validate(&self) -> Result<BuildingSetValidation> {
        let mut violations = Vec::new();
        for l in &self.ground {
            if !self.members.contains(&BTreeSet::from([*l])) {
                violations.push(format!("singleton {{{l}}} is missing"));
            }
        }
        if let BuildingMode::OverPolytope(_) = &self.mode {
            for m in &self.members {
                if !self.face_is_nonempty(m)? {
                    violations.push(format!("member {} indexes an empty face", fmt_set(m)));
                }
            }
        }
        let list: Vec<&BTreeSet<Label>> = self.members.iter().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if a.intersection(b).next().is_none() {
                    continue;
                }
                let union: BTreeSet<Label> = a.union(b).copied().collect();
                if self.members.contains(&union) {
                    continue;
                }
                let exempt = match &self.mode {
                    BuildingMode::Plain => false,
                    BuildingMode::OverPolytope(_) => !self.face_is_nonempty(&union)?,
                };
                if !exempt {
                    violations.push(format!(
                        "union of overlapping members {} and {} is missing",
                        fmt_set(a),
                        fmt_set(b)
                    ));
                }
            }
        }
        Ok(BuildingSetValidation { violations })
    }

    /// Inclusion-maximal members. The building set is connected exactly when
    /// this is the singleton family containing the full ground set.
    pub fn connected_components(&self) -> Vec<BTreeSet<Label>> {
        self.members
            .iter()
            .filter(|m| {
                !self
                    .members
                    .iter()
                    .any(|other| *m != other && m.is_subset(other))
            })
            .cloned()
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let components = self.connected_components();
        components.len() == 1 && components[0].len() == self.ground.len()
    }
}

fn fmt_set(s: &BTreeSet<Label>) -> String {
    let inner: Vec<String> = s.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// All nonempty subsets of `ground` as a plain building set.
pub fn complete_building_set(ground: Vec<Label>) -> Result<BuildingSet> {
    if ground.is_empty() {
        return Err(Error::invalid("building set needs a nonempty ground set"));
    }
    if ground.len() > 16 {
        return Err(Error::invalid(
            "complete building set is desk-scale only: ground larger than 16",
        ));
    }
    let mut sorted = ground;
    sorted.sort();
    let mut members = BTreeSet::new();
    for mask in 1u32..(1 << sorted.len()) {
        let subset: BTreeSet<Label> = sorted
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, l)| *l)
            .collect();
        members.insert(subset);
    }
    BuildingSet::plain(sorted, members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(ids: &[u32]) -> BTreeSet<Label> {
        ids.iter().map(|&i| Label::Simple(i)).collect()
    }

    fn ground(ids: &[u32]) -> Vec<Label> {
        ids.iter().map(|&i| Label::Simple(i)).collect()
    }

    #[test]
    fn complete_family_counts() {
        let b = complete_building_set(ground(&[3, 4, 5])).unwrap();
        assert_eq!(b.members().len(), 7);
        assert!(b.validate().unwrap().is_valid());
        assert!(b.is_connected());

        let tiny = complete_building_set(ground(&[4, 5])).unwrap();
        let expect: BTreeSet<BTreeSet<Label>> =
            [simple(&[4]), simple(&[5]), simple(&[4, 5])].into();
        assert_eq!(*tiny.members(), expect);

        let single = complete_building_set(ground(&[6])).unwrap();
        assert_eq!(single.members().len(), 1);
    }

    #[test]
    fn plain_closure_violation_is_reported() {
        let members: BTreeSet<BTreeSet<Label>> = [
            simple(&[1]),
            simple(&[2]),
            simple(&[3]),
            simple(&[1, 2]),
            simple(&[2, 3]),
        ]
        .into();
        let b = BuildingSet::plain(ground(&[1, 2, 3]), members.clone()).unwrap();
        let report = b.validate().unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("{1,2}"));
        assert!(report.violations[0].contains("{2,3}"));

        // The same family over the simplex fan is fine: the union {1,2,3}
        // indexes the empty face.
        let fan = simplex_fan(&ground(&[1, 2, 3])).unwrap();
        let over = BuildingSet::over_polytope(ground(&[1, 2, 3]), members, fan).unwrap();
        assert!(over.validate().unwrap().is_valid());
    }

    #[test]
    fn missing_singleton_is_reported() {
        let members: BTreeSet<BTreeSet<Label>> = [simple(&[1]), simple(&[1, 2])].into();
        let b = BuildingSet::plain(ground(&[1, 2]), members).unwrap();
        let report = b.validate().unwrap();
        assert!(report.violations.iter().any(|v| v.contains("{2}")));
    }

    #[test]
    fn empty_face_member_is_reported_over_polytope() {
        let fan = simplex_fan(&ground(&[1, 2])).unwrap();
        let members: BTreeSet<BTreeSet<Label>> =
            [simple(&[1]), simple(&[2]), simple(&[1, 2])].into();
        let b = BuildingSet::over_polytope(ground(&[1, 2]), members, fan).unwrap();
        let report = b.validate().unwrap();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("empty face"));
    }

    #[test]
    fn components_are_the_maximal_members() {
        let members: BTreeSet<BTreeSet<Label>> =
            [simple(&[1]), simple(&[2]), simple(&[3]), simple(&[1, 2])].into();
        let b = BuildingSet::plain(ground(&[1, 2, 3]), members).unwrap();
        let comps: BTreeSet<BTreeSet<Label>> = b.connected_components().into_iter().collect();
        assert_eq!(comps, BTreeSet::from([simple(&[1, 2]), simple(&[3])]));
        assert!(!b.is_connected());

        let singles: BTreeSet<BTreeSet<Label>> =
            [simple(&[1]), simple(&[2]), simple(&[3])].into();
        let s = BuildingSet::plain(ground(&[1, 2, 3]), singles).unwrap();
        assert_eq!(s.connected_components().len(), 3);
    }

    #[test]
    fn shape_errors_are_rejected_at_construction() {
        assert!(BuildingSet::plain(ground(&[1, 1]), BTreeSet::new()).is_err());
        let stray: BTreeSet<BTreeSet<Label>> = [simple(&[9])].into();
        assert!(BuildingSet::plain(ground(&[1, 2]), stray).is_err());
        let empty_member: BTreeSet<BTreeSet<Label>> = [BTreeSet::new()].into();
        assert!(BuildingSet::plain(ground(&[1, 2]), empty_member).is_err());
        let fan = simplex_fan(&ground(&[1, 2])).unwrap();
        assert!(BuildingSet::over_polytope(ground(&[1, 3]), BTreeSet::new(), fan).is_err());
    }
}
