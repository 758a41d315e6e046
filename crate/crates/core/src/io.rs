//! Canonical JSON for fans, building sets, weight vectors, and verification
//! reports.
//!
//! Fan files are the golden-test currency: rays are lexicographically
//! sorted, cone lists sorted, and serialization is byte-stable, so two equal
//! fans always produce identical files.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{labeled_simplex_power, simplex_fan, Cone, Fan, Label, LatticeVector};
use crate::moduli::{CheckReport, WeightVector};
use crate::nestohedra::{BuildingMode, BuildingSet};

/// Wire form of a fan, already in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

/// Wire form of a building set. The reference polytope of an
/// `over_polytope` set is not stored: it is recovered from the label
/// structure (plain labels name a simplex, paired labels a labeled product
/// of simplices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingSetJson {
    pub ground: Vec<String>,
    pub members: Vec<Vec<String>>,
    pub mode: String,
}

/// Wire form of a weight vector; entries are exact `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    pub d: usize,
    pub n: usize,
    pub a: Vec<String>,
}

fn label_string(label: Option<Label>) -> String {
    label.map(|l| l.to_string()).unwrap_or_default()
}

pub fn fan_to_json(fan: &Fan) -> Result<FanJson> {
    let canonical = fan.canonical();
    let mut rays = Vec::with_capacity(canonical.rays.len());
    for ray in &canonical.rays {
        let mut row = Vec::with_capacity(ray.rank());
        for c in ray.coords() {
            row.push(i64::try_from(c).map_err(|_| {
                Error::invalid(format!("ray coordinate {c} does not fit a 64-bit file entry"))
            })?);
        }
        rays.push(row);
    }
    Ok(FanJson {
        rank: canonical.rank,
        rays,
        max_cones: canonical.max_cones,
        labels: canonical.labels.into_iter().map(label_string).collect(),
    })
}

pub fn fan_from_json(json: &FanJson) -> Result<Fan> {
    if json.labels.len() != json.rays.len() {
        return Err(Error::invalid(format!(
            "expected one label per ray, got {} labels for {} rays",
            json.labels.len(),
            json.rays.len()
        )));
    }
    let mut rays = Vec::with_capacity(json.rays.len());
    for row in &json.rays {
        let raw: Vec<BigInt> = row.iter().map(|&c| BigInt::from(c)).collect();
        let v = LatticeVector::primitive(raw.clone())?;
        if v.coords() != raw.as_slice() {
            return Err(Error::invalid(format!(
                "ray {row:?} is not primitive; canonical files store primitive rays"
            )));
        }
        rays.push(v);
    }
    let max_cones: Vec<Cone> = json
        .max_cones
        .iter()
        .map(|c| Cone::new(c.clone()))
        .collect::<Result<_>>()?;
    let mut labels = BTreeMap::new();
    for (i, s) in json.labels.iter().enumerate() {
        if !s.is_empty() {
            labels.insert(i, Label::parse(s)?);
        }
    }
    Fan::from_parts(json.rank, rays, max_cones, labels)
}

/// Canonical fan file: pretty JSON plus a trailing newline, byte-stable.
pub fn fan_to_canonical_string(fan: &Fan) -> Result<String> {
    let json = fan_to_json(fan)?;
    let body = serde_json::to_string_pretty(&json).map_err(|e| Error::Json(e.to_string()))?;
    Ok(body + "\n")
}

pub fn fan_from_str(text: &str) -> Result<Fan> {
    let json: FanJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    fan_from_json(&json)
}

fn parse_labels(raw: &[String]) -> Result<Vec<Label>> {
    raw.iter().map(|s| Label::parse(s)).collect()
}

/// Recover the reference fan of an `over_polytope` building set from its
/// ground labels: plain labels name the simplex on the ground, paired labels
/// `i:k` with `k` running over `1..=d` name the `d`-fold labeled product of
/// the simplex on the plain part.
fn reference_from_labels(ground: &[Label]) -> Result<Fan> {
    if ground.iter().all(|l| matches!(l, Label::Simple(_))) {
        return simplex_fan(ground);
    }
    if !ground.iter().all(|l| matches!(l, Label::Pair(_, _))) {
        return Err(Error::invalid(
            "over_polytope ground must be all plain labels or all paired labels",
        ));
    }
    let mut ids: BTreeSet<u32> = BTreeSet::new();
    let mut factors: BTreeSet<u32> = BTreeSet::new();
    for l in ground {
        if let Label::Pair(i, k) = l {
            ids.insert(*i);
            factors.insert(*k);
        }
    }
    let d = factors.len();
    let expected_factors: BTreeSet<u32> = (1..=d as u32).collect();
    if factors != expected_factors || ground.len() != ids.len() * d {
        return Err(Error::invalid(
            "paired ground labels must form a full id-by-factor grid",
        ));
    }
    let simple: Vec<Label> = ids.into_iter().map(Label::Simple).collect();
    labeled_simplex_power(&simple, d)
}

pub fn building_set_to_json(b: &BuildingSet) -> BuildingSetJson {
    BuildingSetJson {
        ground: b.ground().iter().map(|l| l.to_string()).collect(),
        members: b
            .members()
            .iter()
            .map(|m| m.iter().map(|l| l.to_string()).collect())
            .collect(),
        mode: match b.mode() {
            BuildingMode::Plain => "plain".into(),
            BuildingMode::OverPolytope(_) => "over_polytope".into(),
        },
    }
}

pub fn building_set_from_json(json: &BuildingSetJson) -> Result<BuildingSet> {
    let ground = parse_labels(&json.ground)?;
    let members: BTreeSet<BTreeSet<Label>> = json
        .members
        .iter()
        .map(|m| parse_labels(m).map(|v| v.into_iter().collect()))
        .collect::<Result<_>>()?;
    match json.mode.as_str() {
        "plain" => BuildingSet::plain(ground, members),
        "over_polytope" => {
            let reference = reference_from_labels(&ground)?;
            BuildingSet::over_polytope(ground, members, reference)
        }
        other => Err(Error::invalid(format!(
            "unknown building-set mode {other:?}; expected \"plain\" or \"over_polytope\""
        ))),
    }
}

pub fn building_set_to_canonical_string(b: &BuildingSet) -> Result<String> {
    let body = serde_json::to_string_pretty(&building_set_to_json(b))
        .map_err(|e| Error::Json(e.to_string()))?;
    Ok(body + "\n")
}

pub fn building_set_from_str(text: &str) -> Result<BuildingSet> {
    let json: BuildingSetJson =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    building_set_from_json(&json)
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim())
        .map_err(|e| Error::invalid(format!("bad rational {text:?}: {e}")))
}

pub fn weight_to_json(w: &WeightVector) -> WeightJson {
    WeightJson {
        d: w.d(),
        n: w.n(),
        a: w.entries().iter().map(|x| x.to_string()).collect(),
    }
}

pub fn weight_from_json(json: &WeightJson) -> Result<WeightVector> {
    let a: Vec<BigRational> = json
        .a
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_>>()?;
    WeightVector::new(json.d, json.n, a)
}

pub fn weight_to_canonical_string(w: &WeightVector) -> Result<String> {
    let body = serde_json::to_string_pretty(&weight_to_json(w))
        .map_err(|e| Error::Json(e.to_string()))?;
    Ok(body + "\n")
}

pub fn weight_from_str(text: &str) -> Result<WeightVector> {
    let json: WeightJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    weight_from_json(&json)
}

pub fn report_to_canonical_string(report: &CheckReport) -> Result<String> {
    let body =
        serde_json::to_string_pretty(report).map_err(|e| Error::Json(e.to_string()))?;
    Ok(body + "\n")
}
