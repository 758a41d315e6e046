//! End-to-end acceptance battery. Ten numbered criteria cover the figure
//! instance, the theorem sweeps, the regression and lemma suites, order
//! independence, fan validity, the polytope oracle, the reduction reports,
//! and determinism. Each criterion prints one PASS/FAIL line with its
//! runtime; failures are collected and reported together at the end so a
//! single run shows the whole picture.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nestofan_core::geometry::{fan_equal, Fan, Label};
use nestofan_core::io::{building_set_to_canonical_string, fan_to_canonical_string};
use nestofan_core::moduli::{
    blowup_fan, induced_building_set, is_toric_chamber, losev_manin_weights, promoted_subsets,
    sym_side_fan, validate_weight, verify_lemma_join, verify_thm1, verify_thm2, verify_thm3_part1,
    WeightVector,
};
use nestofan_core::nestohedra::{
    complete_building_set, minkowski_nestohedron_oracle, nested_fan, order_independence_check,
    sym_building_set, sym_fan, sym_product_building_set, BuildingSet,
};

/// Criterion 1: the figure instance must round-trip in well under a blink.
const FIGURE_BUDGET: Duration = Duration::from_millis(100);
/// Criterion 2: the full equal-tail sweep.
const THM1_SWEEP_BUDGET: Duration = Duration::from_secs(60);
/// Criterion 3: sampling plus per-sample verification.
const THM2_SAMPLING_BUDGET: Duration = Duration::from_secs(120);
/// Criterion 8: exhaustive small grounds plus sampled five-element grounds.
const ORACLE_BUDGET: Duration = Duration::from_secs(120);
/// Criterion 3: sampled weight vectors per grid cell.
const SAMPLES_PER_GRID_CELL: usize = 50;
/// Criterion 6: sampled subdivision schedules when exhaustion is too big.
const SCHEDULE_TRIALS: usize = 100;
/// Criterion 8: distinct five-element-ground building sets to sample.
const FIVE_GROUND_SAMPLES: usize = 12;

/// The `(d, n)` grid shared by criteria 2, 3, and 9.
fn grid() -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for d in 1..=3 {
        for n in (d + 3)..=8 {
            cells.push((d, n));
        }
    }
    cells
}

fn tail_labels(d: usize, n: usize) -> Vec<Label> {
    ((d + 2) as u32..=n as u32).map(Label::Simple).collect()
}

/// Fans deduplicated by geometry (ray set plus maximal-cone set); labels are
/// presentational and would otherwise keep equal fans apart.
struct FanPool {
    seen: BTreeSet<String>,
    fans: Vec<(String, Fan)>,
}

impl FanPool {
    fn new() -> Self {
        FanPool {
            seen: BTreeSet::new(),
            fans: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, fan: Fan) {
        let canonical = fan.canonical();
        let rays: Vec<Vec<BigInt>> = canonical
            .rays
            .iter()
            .map(|r| r.coords().to_vec())
            .collect();
        let key = format!("{}|{:?}|{:?}", canonical.rank, rays, canonical.max_cones);
        if self.seen.insert(key) {
            self.fans.push((name.to_string(), fan));
        }
    }
}

/// Building sets deduplicated by canonical serialization.
struct SetPool {
    seen: BTreeSet<String>,
    sets: Vec<(String, BuildingSet)>,
}

impl SetPool {
    fn new() -> Self {
        SetPool {
            seen: BTreeSet::new(),
            sets: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, b: BuildingSet) {
        let key = building_set_to_canonical_string(&b)
            .expect("building sets in the pool serialize cleanly");
        if self.seen.insert(key) {
            self.sets.push((name.to_string(), b));
        }
    }
}

/// One admissible weight vector for `(d, n)`: all numerators drawn over the
/// common denominator `q = (d+1)(n-d)` (at most 20 on this grid, within the
/// denominator cap of 24). Heads sit within `1/q` of 1, the pivot anywhere
/// between its floor `(2d+1)/q` and 1, and the tail starts at its floor
/// `(d+1)/q` per entry and absorbs at most the `d+1` spare units that keep
/// the tail sum at or below 1 — so every draw lands between the floor and 1
/// componentwise and inside the equal-tail chamber by construction.
fn sample_weight(d: usize, n: usize, rng: &mut ChaCha8Rng) -> WeightVector {
    let q = ((d + 1) * (n - d)) as i64;
    let mut numerators: Vec<i64> = Vec::with_capacity(n);
    for _ in 0..d {
        numerators.push(rng.gen_range(q - 1..=q));
    }
    numerators.push(rng.gen_range(2 * d as i64 + 1..=q));
    let tail_len = n - d - 1;
    let mut tail = vec![d as i64 + 1; tail_len];
    for _ in 0..=d {
        let bin = rng.gen_range(0..=tail_len);
        if bin > 0 {
            tail[bin - 1] += 1;
        }
    }
    numerators.extend(tail);
    let a = numerators
        .into_iter()
        .map(|p| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect();
    WeightVector::new(d, n, a).expect("the sampler respects the weight shape")
}

/// Close a family of label sets under unions of overlapping members.
fn close_under_overlapping_unions(
    mut members: BTreeSet<BTreeSet<Label>>,
) -> BTreeSet<BTreeSet<Label>> {
    loop {
        let mut fresh: Vec<BTreeSet<Label>> = Vec::new();
        for a in &members {
            for b in &members {
                if a < b && !a.is_disjoint(b) {
                    let union: BTreeSet<Label> = a.union(b).cloned().collect();
                    if !members.contains(&union) {
                        fresh.push(union);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return members;
        }
        members.extend(fresh);
    }
}

/// All subsets of `{1..k}` with at least two elements, as label sets.
fn non_singleton_subsets(k: usize) -> Vec<BTreeSet<Label>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << k) {
        if mask.count_ones() >= 2 {
            out.push(
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| Label::Simple(i as u32 + 1))
                    .collect(),
            );
        }
    }
    out
}

struct Outcome {
    name: &'static str,
    pass: bool,
    info: String,
    elapsed: Duration,
}

fn run_criterion(
    results: &mut Vec<Outcome>,
    number: usize,
    name: &'static str,
    body: impl FnOnce() -> Result<String, String>,
) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (pass, info) = match outcome {
        Ok(info) => (true, info),
        Err(why) => (false, why),
    };
    println!(
        "[acceptance] criterion {:2} ({}): {} ({:.3}s) {}",
        number,
        name,
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        info
    );
    results.push(Outcome {
        name,
        pass,
        info,
        elapsed,
    });
}

#[test]
fn acceptance_criteria() {
    let mut results: Vec<Outcome> = Vec::new();
    let mut fan_pool = FanPool::new();
    let mut set_pool = SetPool::new();

    // ----- Criterion 1: the rank-2 figure instance -------------------------
    run_criterion(&mut results, 1, "figure instance", || {
        let start = Instant::now();
        let base = complete_building_set(vec![Label::Simple(1), Label::Simple(2)])
            .map_err(|e| e.to_string())?;
        let squared = sym_fan(&base, 2).map_err(|e| e.to_string())?;
        let weights = losev_manin_weights(2, 5).map_err(|e| e.to_string())?;
        let blown = blowup_fan(&weights).map_err(|e| e.to_string())?;
        let f_vector = squared.f_vector();
        let ray_set: BTreeSet<Vec<i64>> = squared
            .rays()
            .iter()
            .map(|r| {
                r.coords()
                    .iter()
                    .map(|c| c.to_i64().expect("figure coordinates are tiny"))
                    .collect()
            })
            .collect();
        let expected_rays: BTreeSet<Vec<i64>> = [
            vec![1, 0],
            vec![-1, 0],
            vec![0, 1],
            vec![0, -1],
            vec![1, 1],
            vec![-1, -1],
        ]
        .into_iter()
        .collect();
        let agree = fan_equal(&squared, &blown);
        let elapsed = start.elapsed();

        let mut problems = Vec::new();
        if f_vector != vec![1, 6, 6] {
            problems.push(format!("f_vector {:?}, expected [1, 6, 6]", f_vector));
        }
        if ray_set != expected_rays {
            problems.push(format!("ray set {:?}", ray_set));
        }
        if !agree {
            problems.push("square of the two-element set differs from the blow-up fan".into());
        }
        if elapsed > FIGURE_BUDGET {
            problems.push(format!("took {:?}, budget {:?}", elapsed, FIGURE_BUDGET));
        }
        fan_pool.add("figure sym^2", squared);
        fan_pool.add("figure blow-up (2,5)", blown);
        if problems.is_empty() {
            Ok(format!("f_vector [1, 6, 6], 6 rays, {:?}", elapsed))
        } else {
            Err(problems.join("; "))
        }
    });

    // ----- Criterion 2: equal-tail sweep -----------------------------------
    run_criterion(&mut results, 2, "equal-tail sweep", || {
        let start = Instant::now();
        let mut failures = Vec::new();
        for &(d, n) in &grid() {
            match verify_thm1(d, n) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("(d={}, n={}) disagreed", d, n)),
                Err(e) => failures.push(format!("(d={}, n={}) errored: {}", d, n, e)),
            }
        }
        let elapsed = start.elapsed();
        if elapsed > THM1_SWEEP_BUDGET {
            failures.push(format!(
                "took {:?}, budget {:?}",
                elapsed, THM1_SWEEP_BUDGET
            ));
        }
        if failures.is_empty() {
            Ok(format!("{} grid cells agree", grid().len()))
        } else {
            Err(failures.join("; "))
        }
    });
    // Pool the sweep's fans and building sets for the later criteria.
    for &(d, n) in &grid() {
        let w = losev_manin_weights(d, n).expect("grid shapes are admissible");
        let blown = blowup_fan(&w).expect("equal-tail blow-up fans build");
        fan_pool.add(&format!("blow-up lm({},{})", d, n), blown);
        let tail = complete_building_set(tail_labels(d, n)).expect("tail ground is nonempty");
        let sym = sym_building_set(&tail, d).expect("symmetric powers of the tail build");
        set_pool.add(&format!("complete tail ({},{})", d, n), tail);
        set_pool.add(&format!("sym^{} complete tail ({},{})", d, d, n), sym);
    }

    // ----- Criterion 3: sampled-weight verification ------------------------
    let mut representatives: Vec<WeightVector> = Vec::new();
    run_criterion(&mut results, 3, "sampled weights", || {
        let start = Instant::now();
        let mut failures = Vec::new();
        let mut checked = 0usize;
        for &(d, n) in &grid() {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC3_0000 + (d * 100 + n) as u64);
            for k in 0..SAMPLES_PER_GRID_CELL {
                let w = sample_weight(d, n, &mut rng);
                if !validate_weight(&w) || !is_toric_chamber(&w) {
                    failures.push(format!(
                        "sample {} for (d={}, n={}) left the admissible chamber",
                        k, d, n
                    ));
                    continue;
                }
                if k == 0 {
                    representatives.push(w.clone());
                }
                match verify_thm2(&w) {
                    Ok(true) => checked += 1,
                    Ok(false) => failures.push(format!(
                        "(d={}, n={}) sample {} disagreed",
                        d, n, k
                    )),
                    Err(e) => failures.push(format!(
                        "(d={}, n={}) sample {} errored: {}",
                        d, n, k, e
                    )),
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed > THM2_SAMPLING_BUDGET {
            failures.push(format!(
                "took {:?}, budget {:?}",
                elapsed, THM2_SAMPLING_BUDGET
            ));
        }
        if failures.is_empty() {
            Ok(format!(
                "{} samples across {} grid cells agree",
                checked,
                grid().len()
            ))
        } else {
            Err(failures.join("; "))
        }
    });
    // Pool one representative sampled instance per grid cell.
    for w in &representatives {
        let (d, n) = (w.d(), w.n());
        if let Ok(f) = blowup_fan(w) {
            fan_pool.add(&format!("sampled blow-up ({},{})", d, n), f);
        }
        if let Ok(f) = sym_side_fan(w) {
            fan_pool.add(&format!("sampled sym side ({},{})", d, n), f);
        }
        if let Ok(b) = induced_building_set(w) {
            set_pool.add(&format!("sampled induced set ({},{})", d, n), b);
        }
        let family: BTreeSet<BTreeSet<Label>> = promoted_subsets(w)
            .into_iter()
            .map(|s| s.into_iter().map(Label::Simple).collect())
            .collect();
        if let Ok(b) = sym_product_building_set(&tail_labels(d, n), &family, d) {
            set_pool.add(&format!("sampled sym product ({},{})", d, n), b);
        }
    }

    // ----- Criterion 4: line-case regression against the complete set ------
    run_criterion(&mut results, 4, "line-case regression", || {
        let mut failures = Vec::new();
        for n in [5usize, 6, 7] {
            let w = losev_manin_weights(1, n).expect("line-case shapes are admissible");
            let blown = blowup_fan(&w).expect("line-case blow-up fans build");
            let complete =
                complete_building_set(tail_labels(1, n)).expect("tail ground is nonempty");
            let nested = nested_fan(&complete).expect("complete nested fans build");
            let expected_rays = (1usize << (n - 2)) - 2;
            if !fan_equal(&blown, &nested) {
                failures.push(format!("n={}: blow-up differs from the nested fan", n));
            }
            if blown.rays().len() != expected_rays {
                failures.push(format!(
                    "n={}: {} rays, expected {}",
                    n,
                    blown.rays().len(),
                    expected_rays
                ));
            }
            fan_pool.add(&format!("line-case blow-up n={}", n), blown);
            fan_pool.add(&format!("line-case nested n={}", n), nested);
            set_pool.add(&format!("line-case complete tail n={}", n), complete);
        }
        if failures.is_empty() {
            Ok("n = 5, 6, 7 match with the expected ray counts".into())
        } else {
            Err(failures.join("; "))
        }
    });

    // ----- Criterion 5: star/join law on every pooled fan ------------------
    run_criterion(&mut results, 5, "star/join law", || {
        let mut failures = Vec::new();
        for (name, fan) in &fan_pool.fans {
            match verify_lemma_join(fan) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{} violated the star/join law", name)),
                Err(e) => failures.push(format!("{} errored: {}", name, e)),
            }
        }
        if failures.is_empty() {
            Ok(format!("{} distinct fans checked", fan_pool.fans.len()))
        } else {
            Err(failures.join("; "))
        }
    });

    // ----- Criterion 6: subdivision-order independence ---------------------
    run_criterion(&mut results, 6, "order independence", || {
        let mut failures = Vec::new();
        for (name, b) in &set_pool.sets {
            match order_independence_check(b, SCHEDULE_TRIALS, 0xC6) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("{} depends on the schedule", name)),
                Err(e) => failures.push(format!("{} errored: {}", name, e)),
            }
        }
        if failures.is_empty() {
            Ok(format!(
                "{} distinct building sets checked",
                set_pool.sets.len()
            ))
        } else {
            Err(failures.join("; "))
        }
    });

    // ----- Criterion 7: validity and unimodularity -------------------------
    run_criterion(&mut results, 7, "validity and unimodularity", || {
        let mut failures = Vec::new();
        for (name, fan) in &fan_pool.fans {
            let report = fan.validate();
            if !report.is_valid() {
                failures.push(format!(
                    "{} failed validation: {}",
                    name,
                    report.violations.join(" | ")
                ));
            }
            if !fan.is_unimodular() {
                failures.push(format!("{} has a non-unimodular cone", name));
            }
        }
        if failures.is_empty() {
            Ok(format!(
                "{} distinct fans valid and unimodular",
                fan_pool.fans.len()
            ))
        } else {
            Err(failures.join("; "))
        }
    });

    // ----- Criterion 8: polytope oracle equivalence ------------------------
    run_criterion(&mut results, 8, "polytope oracle", || {
        let start = Instant::now();
        let mut failures = Vec::new();
        let mut checked = 0usize;

        let mut audit = |name: String, b: &BuildingSet| match (
            minkowski_nestohedron_oracle(b),
            nested_fan(b),
        ) {
            (Ok(oracle), Ok(nested)) => {
                if fan_equal(&oracle, &nested) {
                    checked += 1;
                } else {
                    failures.push(format!("{} oracle differs from the nested fan", name));
                }
            }
            (Err(e), _) => failures.push(format!("{} oracle errored: {}", name, e)),
            (_, Err(e)) => failures.push(format!("{} nested fan errored: {}", name, e)),
        };

        // Exhaustive grounds of sizes 2, 3, 4.
        for k in 2..=4usize {
            let pool = non_singleton_subsets(k);
            let ground: Vec<Label> = (1..=k as u32).map(Label::Simple).collect();
            for mask in 0u32..(1 << pool.len()) {
                let mut members: BTreeSet<BTreeSet<Label>> = ground
                    .iter()
                    .map(|l| BTreeSet::from([*l]))
                    .collect();
                for (i, subset) in pool.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        members.insert(subset.clone());
                    }
                }
                let Ok(b) = BuildingSet::plain(ground.clone(), members) else {
                    continue;
                };
                let closed = match b.validate() {
                    Ok(report) => report.is_valid(),
                    Err(_) => false,
                };
                if !closed || !b.is_connected() {
                    continue;
                }
                audit(format!("ground {} mask {}", k, mask), &b);
            }
        }

        // Sampled grounds of size 5: random seeds closed under overlapping
        // unions, forced connected by including the full ground.
        let ground: Vec<Label> = (1..=5u32).map(Label::Simple).collect();
        let pool = non_singleton_subsets(5);
        let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
        let mut sampled: BTreeSet<String> = BTreeSet::new();
        let mut attempts = 0;
        while sampled.len() < FIVE_GROUND_SAMPLES && attempts < 200 {
            attempts += 1;
            let mut members: BTreeSet<BTreeSet<Label>> = ground
                .iter()
                .map(|l| BTreeSet::from([*l]))
                .collect();
            members.insert(ground.iter().cloned().collect());
            for subset in &pool {
                if rng.gen_range(0..10) < 3 {
                    members.insert(subset.clone());
                }
            }
            let closed = close_under_overlapping_unions(members);
            let b = BuildingSet::plain(ground.clone(), closed)
                .expect("closed families are building sets");
            if !b.is_connected() {
                continue;
            }
            let key = building_set_to_canonical_string(&b)
                .expect("sampled building sets serialize cleanly");
            if !sampled.insert(key) {
                continue;
            }
            audit(format!("sampled five-ground {}", sampled.len()), &b);
        }

        let elapsed = start.elapsed();
        if elapsed > ORACLE_BUDGET {
            failures.push(format!("took {:?}, budget {:?}", elapsed, ORACLE_BUDGET));
        }
        if sampled.len() < FIVE_GROUND_SAMPLES {
            failures.push(format!(
                "only {} distinct five-element-ground samples found",
                sampled.len()
            ));
        }
        if failures.is_empty() {
            Ok(format!("{} building sets agree with the oracle", checked))
        } else {
            Err(failures.join("; "))
        }
    });

    // ----- Criterion 9: line-reduction reports -----------------------------
    run_criterion(&mut results, 9, "line-reduction reports", || {
        let mut failures = Vec::new();
        let mut discrepancies = 0usize;
        for &(d, n) in &grid() {
            let w = losev_manin_weights(d, n).expect("grid shapes are admissible");
            let report = match verify_thm3_part1(&w) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("(d={}, n={}) errored: {}", d, n, e));
                    continue;
                }
            };
            let find = |name: &str| report.checks.iter().find(|c| c.name == name);
            match find("excess-over-two") {
                Some(item) if item.pass => {}
                Some(item) => failures.push(format!(
                    "(d={}, n={}) excess bound failed: {}",
                    d, n, item.detail
                )),
                None => failures.push(format!("(d={}, n={}) missing excess bound", d, n)),
            }
            let mut readings = Vec::new();
            for name in [
                "floor-dominance[1/(n-2)]",
                "floor-dominance[1/(n-d-1)]",
                "coarse-chamber[tail-from-d+3]",
                "coarse-chamber[tail-from-d+2]",
            ] {
                match find(name) {
                    Some(item) if !item.detail.is_empty() => readings.push(item.pass),
                    Some(_) => failures.push(format!(
                        "(d={}, n={}) {} carries no detail",
                        d, n, name
                    )),
                    None => failures.push(format!("(d={}, n={}) missing {}", d, n, name)),
                }
            }
            if readings.len() == 4 && (readings[0] != readings[1] || readings[2] != readings[3]) {
                discrepancies += 1;
            }
        }
        if failures.is_empty() {
            Ok(format!(
                "{} reports complete; {} show disagreeing index readings",
                grid().len(),
                discrepancies
            ))
        } else {
            Err(failures.join("; "))
        }
    });

    // ----- Criterion 10: determinism ---------------------------------------
    run_criterion(&mut results, 10, "determinism", || {
        let mut failures = Vec::new();

        let rebuild_figure = || -> Result<String, String> {
            let base = complete_building_set(vec![Label::Simple(1), Label::Simple(2)])
                .map_err(|e| e.to_string())?;
            let fan = sym_fan(&base, 2).map_err(|e| e.to_string())?;
            fan_to_canonical_string(&fan).map_err(|e| e.to_string())
        };
        match (rebuild_figure(), rebuild_figure()) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push("figure fan serialization drifted".into()),
            (Err(e), _) | (_, Err(e)) => failures.push(format!("figure rebuild errored: {}", e)),
        }

        let rebuild_big = || -> Result<String, String> {
            let w = losev_manin_weights(3, 8).map_err(|e| e.to_string())?;
            let fan = blowup_fan(&w).map_err(|e| e.to_string())?;
            fan_to_canonical_string(&fan).map_err(|e| e.to_string())
        };
        match (rebuild_big(), rebuild_big()) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push("large blow-up serialization drifted".into()),
            (Err(e), _) | (_, Err(e)) => {
                failures.push(format!("large rebuild errored: {}", e))
            }
        }

        let rebuild_nested = || -> Result<String, String> {
            let b = complete_building_set(tail_labels(1, 7)).map_err(|e| e.to_string())?;
            let fan = nested_fan(&b).map_err(|e| e.to_string())?;
            fan_to_canonical_string(&fan).map_err(|e| e.to_string())
        };
        match (rebuild_nested(), rebuild_nested()) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => failures.push("nested-fan serialization drifted".into()),
            (Err(e), _) | (_, Err(e)) => {
                failures.push(format!("nested rebuild errored: {}", e))
            }
        }

        let resample = |(d, n): (usize, usize)| -> Vec<String> {
            let mut rng = ChaCha8Rng::seed_from_u64(0xC3_0000 + (d * 100 + n) as u64);
            (0..SAMPLES_PER_GRID_CELL)
                .map(|_| {
                    sample_weight(d, n, &mut rng)
                        .entries()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect()
        };
        for cell in [(1usize, 6usize), (3, 8)] {
            if resample(cell) != resample(cell) {
                failures.push(format!("weight sampling drifted on {:?}", cell));
            }
        }

        for (name, b) in set_pool.sets.iter().take(6) {
            let a = building_set_to_canonical_string(b).map_err(|e| e.to_string());
            let c = building_set_to_canonical_string(b).map_err(|e| e.to_string());
            if a != c {
                failures.push(format!("building-set serialization drifted for {}", name));
            }
        }

        if failures.is_empty() {
            Ok("rebuilds and reserializations are byte-identical".into())
        } else {
            Err(failures.join("; "))
        }
    });

    let failed: Vec<&Outcome> = results.iter().filter(|r| !r.pass).collect();
    let total: Duration = results.iter().map(|r| r.elapsed).sum();
    println!(
        "[acceptance] {} of {} criteria passed in {:.3}s total",
        results.len() - failed.len(),
        results.len(),
        total.as_secs_f64()
    );
    assert!(
        failed.is_empty(),
        "{} acceptance criteria failed:\n{}",
        failed.len(),
        failed
            .iter()
            .map(|r| format!("  {}: {}", r.name, r.info))
            .collect::<Vec<_>>()
            .join("\n")
    );
}
