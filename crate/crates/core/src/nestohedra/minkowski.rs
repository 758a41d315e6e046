//! Independent desk-scale oracle: realize the nestohedron as a Minkowski sum
//! of simplex faces, enumerate its vertices exactly, and read off the inner
//! normal fan. No fan machinery from the rest of the crate is involved in
//! producing the cones, so agreement with the nested fan is real evidence.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{linalg, Cone, Fan, LatticeVector};
use crate::nestohedra::building::BuildingSet;

/// Largest ground size the oracle accepts; vertex enumeration is factorial.
const ORACLE_MAX_GROUND: usize = 6;

/// Inner normal fan of the Minkowski sum of the simplices `conv{e_i : i in
/// I}` over the members `I` of a connected plain building set, computed in
/// the quotient convention (last coordinate eliminated).
///
/// Vertices are enumerated by optimizing linear functionals over each
/// summand and adding up the argmins: a warm-up pass of random generic
/// functionals, then an exhaustive pass over all coordinate orders, which
/// covers every generic functional up to the equivalence that matters.
/// Extreme rays of each vertex's normal cone are certified by the rank of
/// the tight constraints among the known candidate directions (images of
/// indicator vectors — the normal fan coarsens the braid fan, so no other
/// direction can be extreme).
pub fn minkowski_nestohedron_oracle(b: &BuildingSet) -> Result<Fan> {
    if !b.is_plain() || !b.is_connected() {
        return Err(Error::invalid(
            "oracle requires a connected plain building set",
        ));
    }
    let m = b.ground().len();
    if m > ORACLE_MAX_GROUND {
        return Err(Error::OracleGroundTooLarge { got: m });
    }
    if m < 2 {
        return Err(Error::GroundTooSmall { got: m });
    }
    let position_of_label: std::collections::HashMap<_, _> = b
        .ground()
        .iter()
        .enumerate()
        .map(|(k, l)| (*l, k))
        .collect();
    let members: Vec<Vec<usize>> = b
        .members()
        .iter()
        .map(|member| member.iter().map(|l| position_of_label[l]).collect())
        .collect();

    // `order[0]` is the coordinate with the smallest functional value, so
    // each summand's argmin is its member element earliest in `order`.
    let vertex_for_order = |order: &[usize]| -> Vec<i64> {
        let mut position = vec![0usize; m];
        for (p, &c) in order.iter().enumerate() {
            position[c] = p;
        }
        let mut v = vec![0i64; m];
        for member in &members {
            let best = *member
                .iter()
                .min_by_key(|&&c| position[c])
                .expect("members are nonempty");
            v[best] += 1;
        }
        v
    };

    let mut vertices: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f7261636c65);
    for _ in 0..32 {
        let c: Vec<i64> = (0..m).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| c[i]);
        if order.windows(2).any(|w| c[w[0]] == c[w[1]]) {
            continue; // tie: not generic, skip
        }
        vertices.insert(vertex_for_order(&order));
    }
    for order in (0..m).permutations(m) {
        vertices.insert(vertex_for_order(&order));
    }
    let vertices: Vec<Vec<i64>> = vertices.into_iter().collect();

    // Candidate extreme directions: quotient images of indicator vectors of
    // proper nonempty subsets.
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for mask in 1u32..((1 << m) - 1) {
        let ind = |i: usize| -> i64 { i64::from(mask >> i & 1) };
        candidates.push((0..m - 1).map(|i| ind(i) - ind(m - 1)).collect());
    }

    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };

    let mut ray_table: Vec<LatticeVector> = Vec::new();
    let mut ray_index_of_candidate: Vec<Option<usize>> = vec![None; candidates.len()];
    let mut max_cones: Vec<Cone> = Vec::new();
    for v in &vertices {
        // Inner normal cone of v in the quotient: all differences v - w,
        // truncated to the first m-1 coordinates, must pair nonpositively.
        let rows: Vec<Vec<i64>> = vertices
            .iter()
            .filter(|w| *w != v)
            .map(|w| (0..m - 1).map(|i| v[i] - w[i]).collect())
            .collect();
        let mut cone_rays = Vec::new();
        for (ci, r) in candidates.iter().enumerate() {
            if rows.iter().any(|row| dot(row, r) > 0) {
                continue;
            }
            let tight: Vec<Vec<BigInt>> = rows
                .iter()
                .filter(|row| dot(row, r) == 0)
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            if linalg::int_rank(&tight) != m - 2 {
                continue;
            }
            let idx = match ray_index_of_candidate[ci] {
                Some(idx) => idx,
                None => {
                    let idx = ray_table.len();
                    ray_table.push(LatticeVector::from_i64(r)?);
                    ray_index_of_candidate[ci] = Some(idx);
                    idx
                }
            };
            cone_rays.push(idx);
        }
        max_cones.push(Cone::new(cone_rays)?);
    }
    Fan::from_parts(m - 1, ray_table, max_cones, Default::default())
}
