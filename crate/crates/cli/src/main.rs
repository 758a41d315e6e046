//! `nestofan` — build, verify, and render nested fans and weighted blow-up
//! fans from the command line.
//!
//! Every command is pure: files and flags in, files and exit code out.
//! Exit 0 means success and all checks passed, exit 1 means a verification
//! check failed (the report is still written), exit 2 means bad input.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nestofan_core::error::Error;
use nestofan_core::geometry::{fan_equal, simplex_fan, Fan, Label};
use nestofan_core::io::{
    building_set_from_str, fan_to_canonical_string, report_to_canonical_string, weight_from_str,
};
use nestofan_core::moduli::{
    blowup_fan, losev_manin_weights, small_case_note, verify_lemma_join, verify_thm1, verify_thm2,
    verify_thm3_part1, CheckItem, CheckReport, WeightVector,
};
use nestofan_core::nestohedra::{
    complete_building_set, minkowski_nestohedron_oracle, nested_fan, order_independence_check,
    sym_building_set, sym_fan, BuildingSet,
};
use nestofan_core::render::render_svg;

/// Sampled subdivision schedules for the order-independence check when
/// exhaustion is out of reach.
const ORDER_TRIALS: usize = 100;

#[derive(Parser)]
#[command(
    name = "nestofan",
    version,
    about = "Exact fans from building sets and weight vectors: construction, verification, SVG"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Complete simplex fan on the ground {1, ..., n}.
    SimplexFan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Nested fan of a building set read from a JSON file.
    NestedFan {
        #[arg(long = "building-set")]
        building_set: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Nested fan of the d-th symmetric power of a building set.
    Symprod {
        #[arg(long = "building-set")]
        building_set: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Blow-up fan of the equal-tail weight vector for (d, n).
    LmFan {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Blow-up fan of a weight vector read from a JSON file.
    BlowupFan {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run one verification check and write its report.
    Verify {
        /// One of: thm1, thm2, thm3, lemma, order, oracle.
        kind: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long = "building-set")]
        building_set: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a rank-2 fan as SVG: arrows, shaded sectors, dual polygon.
    Render {
        #[arg(long = "building-set")]
        building_set: Option<PathBuf>,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a whole grid of (d, n) instances and aggregate one report.
    Sweep {
        /// Range of d values: "A", "A-B", or "A,B,C".
        #[arg(long)]
        d: String,
        /// Range of n values: "A", "A-B", or "A,B,C".
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A verification failure: the report was produced and written, but at
/// least one check did not pass.
struct ChecksFailed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Outcome::Checks) => ExitCode::from(1),
        Err(Outcome::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

enum Outcome {
    /// A verification check failed; the report has been written.
    Checks,
    /// Bad input: unusable flags, unreadable files, or invalid objects.
    Input(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Input(e.to_string())
    }
}

impl From<ChecksFailed> for Outcome {
    fn from(_: ChecksFailed) -> Self {
        Outcome::Checks
    }
}

fn dispatch(command: Command) -> Result<(), Outcome> {
    match command {
        Command::SimplexFan { n, out, format } => {
            if n == 0 {
                return Err(Outcome::Input("need at least one ground label".into()));
            }
            let ground: Vec<Label> = (1..=n as u32).map(Label::Simple).collect();
            let fan = simplex_fan(&ground)?;
            emit_fan(&fan, format, out.as_deref())
        }
        Command::NestedFan {
            building_set,
            out,
            format,
        } => {
            let b = read_building_set(&building_set)?;
            let fan = nested_fan(&b)?;
            emit_fan(&fan, format, out.as_deref())
        }
        Command::Symprod {
            building_set,
            d,
            out,
            format,
        } => {
            let b = read_building_set(&building_set)?;
            let fan = sym_fan(&b, d)?;
            emit_fan(&fan, format, out.as_deref())
        }
        Command::LmFan { d, n, out, format } => {
            let w = losev_manin_weights(d, n)?;
            let fan = blowup_fan(&w)?;
            emit_fan(&fan, format, out.as_deref())
        }
        Command::BlowupFan {
            weights,
            out,
            format,
        } => {
            let w = read_weights(&weights)?;
            let fan = blowup_fan(&w)?;
            emit_fan(&fan, format, out.as_deref())
        }
        Command::Verify {
            kind,
            d,
            n,
            weights,
            building_set,
            seed,
            out,
        } => verify(
            &kind,
            d,
            n,
            weights.as_deref(),
            building_set.as_deref(),
            seed,
            out.as_deref(),
        ),
        Command::Render {
            building_set,
            weights,
            d,
            n,
            out,
        } => {
            let fan = fan_from_sources(building_set.as_deref(), weights.as_deref(), d, n)?;
            emit_fan(&fan, Format::Svg, out.as_deref())
        }
        Command::Sweep { d, n, seed, out } => sweep(&d, &n, seed, out.as_deref()),
    }
}

fn read_text(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::Input(format!("cannot read {}: {}", path.display(), e)))
}

fn read_building_set(path: &Path) -> Result<BuildingSet, Outcome> {
    Ok(building_set_from_str(&read_text(path)?)?)
}

fn read_weights(path: &Path) -> Result<WeightVector, Outcome> {
    Ok(weight_from_str(&read_text(path)?)?)
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<(), Outcome> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Outcome::Input(format!("cannot write {}: {}", path.display(), e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_fan(fan: &Fan, format: Format, out: Option<&Path>) -> Result<(), Outcome> {
    let text = match format {
        Format::Json => fan_to_canonical_string(fan)?,
        Format::Svg => render_svg(fan)?,
    };
    write_or_print(&text, out)
}

/// Write a report to stdout (and `--out` when given); fail the run when a
/// check line did not pass.
fn emit_report(report: &CheckReport, out: Option<&Path>) -> Result<(), Outcome> {
    let text = report_to_canonical_string(report)?;
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| Outcome::Input(format!("cannot write {}: {}", path.display(), e)))?;
    }
    print!("{text}");
    if report.all_pass() {
        Ok(())
    } else {
        Err(ChecksFailed.into())
    }
}

fn require_shape(d: Option<usize>, n: Option<usize>) -> Result<(usize, usize), Outcome> {
    match (d, n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => Err(Outcome::Input("this check needs both --d and --n".into())),
    }
}

fn fan_summary(fan: &Fan) -> String {
    format!(
        "f_vector {:?}; {} rays; {} maximal cones",
        fan.f_vector(),
        fan.rays().len(),
        fan.max_cones().len()
    )
}

/// Build the fan a command refers to: an explicit weight file, a building
/// set (optionally raised to its d-th symmetric power), or the equal-tail
/// blow-up fan for `(d, n)`.
fn fan_from_sources(
    building_set: Option<&Path>,
    weights: Option<&Path>,
    d: Option<usize>,
    n: Option<usize>,
) -> Result<Fan, Outcome> {
    if let Some(path) = weights {
        let w = read_weights(path)?;
        return Ok(blowup_fan(&w)?);
    }
    if let Some(path) = building_set {
        let b = read_building_set(path)?;
        return match d {
            Some(d) => Ok(sym_fan(&b, d)?),
            None => Ok(nested_fan(&b)?),
        };
    }
    let (d, n) = require_shape(d, n)?;
    let w = losev_manin_weights(d, n)?;
    Ok(blowup_fan(&w)?)
}

fn verify(
    kind: &str,
    d: Option<usize>,
    n: Option<usize>,
    weights: Option<&Path>,
    building_set: Option<&Path>,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), Outcome> {
    let report = match kind {
        "thm1" => {
            let (d, n) = require_shape(d, n)?;
            let pass = verify_thm1(d, n)?;
            let fan = blowup_fan(&losev_manin_weights(d, n)?)?;
            CheckReport {
                instance: format!("thm1 d={d} n={n}"),
                checks: vec![CheckItem {
                    name: "thm1-agreement".into(),
                    pass,
                    detail: fan_summary(&fan),
                }],
            }
        }
        "thm2" => {
            let path = weights
                .ok_or_else(|| Outcome::Input("verify thm2 needs --weights FILE".into()))?;
            let w = read_weights(path)?;
            let pass = verify_thm2(&w)?;
            let fan = blowup_fan(&w)?;
            CheckReport {
                instance: format!("thm2 d={} n={}", w.d(), w.n()),
                checks: vec![CheckItem {
                    name: "thm2-agreement".into(),
                    pass,
                    detail: fan_summary(&fan),
                }],
            }
        }
        "thm3" => {
            let w = match weights {
                Some(path) => read_weights(path)?,
                None => {
                    let (d, n) = require_shape(d, n)?;
                    if let Some(note) = small_case_note(d, n) {
                        let report = CheckReport {
                            instance: format!("thm3 d={d} n={n}"),
                            checks: vec![CheckItem {
                                name: "small-case".into(),
                                pass: true,
                                detail: note,
                            }],
                        };
                        return emit_report(&report, out);
                    }
                    losev_manin_weights(d, n)?
                }
            };
            verify_thm3_part1(&w)?
        }
        "lemma" => {
            let fan = fan_from_sources(building_set, weights, d, n)?;
            let pass = verify_lemma_join(&fan)?;
            CheckReport {
                instance: "lemma join".into(),
                checks: vec![CheckItem {
                    name: "star-join-law".into(),
                    pass,
                    detail: fan_summary(&fan),
                }],
            }
        }
        "order" => {
            let path = building_set
                .ok_or_else(|| Outcome::Input("verify order needs --building-set FILE".into()))?;
            let b = read_building_set(path)?;
            let pass = order_independence_check(&b, ORDER_TRIALS, seed)?;
            CheckReport {
                instance: "order independence".into(),
                checks: vec![CheckItem {
                    name: "schedule-independence".into(),
                    pass,
                    detail: format!("{} members", b.members().len()),
                }],
            }
        }
        "oracle" => {
            let path = building_set
                .ok_or_else(|| Outcome::Input("verify oracle needs --building-set FILE".into()))?;
            let b = read_building_set(path)?;
            let from_polytope = minkowski_nestohedron_oracle(&b)?;
            let nested = nested_fan(&b)?;
            let pass = fan_equal(&from_polytope, &nested);
            CheckReport {
                instance: "polytope oracle".into(),
                checks: vec![CheckItem {
                    name: "oracle-agreement".into(),
                    pass,
                    detail: fan_summary(&nested),
                }],
            }
        }
        other => {
            return Err(Outcome::Input(format!(
                "unknown check {other:?}; expected thm1, thm2, thm3, lemma, order, or oracle"
            )))
        }
    };
    emit_report(&report, out)
}

/// Parse "A", "A-B", or "A,B,C" into a sorted deduplicated list; "A-B" with
/// B < A is the empty range.
fn parse_range(text: &str) -> Result<Vec<usize>, Outcome> {
    let parse_one = |t: &str| -> Result<usize, Outcome> {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Outcome::Input(format!("bad range component {t:?}")))
    };
    let mut values: BTreeSet<usize> = BTreeSet::new();
    for part in text.split(',') {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (parse_one(a)?, parse_one(b)?);
                values.extend(a..=b);
            }
            None => {
                values.insert(parse_one(part)?);
            }
        }
    }
    Ok(values.into_iter().collect())
}

#[derive(Serialize)]
struct SweepReport {
    instance: String,
    checks: Vec<CheckItem>,
    timing_ms: BTreeMap<String, u128>,
}

fn sweep(d_range: &str, n_range: &str, seed: u64, out: Option<&Path>) -> Result<(), Outcome> {
    let ds = parse_range(d_range)?;
    let ns = parse_range(n_range)?;
    let cells: Vec<(usize, usize)> = ds
        .iter()
        .flat_map(|&d| ns.iter().map(move |&n| (d, n)))
        .filter(|&(d, n)| d >= 1 && n > d + 2)
        .collect();

    // Estimate the heavy work (the star/join suite scales with the square
    // of the cone count, the order check with schedule trials) from a cheap
    // construction pass, and refuse over-budget sweeps before starting.
    let mut built: Vec<((usize, usize), Fan, BuildingSet)> = Vec::new();
    let mut estimate_ms: u128 = 0;
    for &(d, n) in &cells {
        let w = losev_manin_weights(d, n)?;
        let fan = blowup_fan(&w)?;
        let tail: Vec<Label> = ((d + 2) as u32..=n as u32).map(Label::Simple).collect();
        let sym = sym_building_set(&complete_building_set(tail)?, d)?;
        let cones = fan.max_cones().len() as u128;
        estimate_ms += cones * cones / 190 + 100 * (1 + cones / 500) + 10;
        built.push(((d, n), fan, sym));
    }
    if let Ok(budget) = std::env::var("NESTOFAN_BUDGET_MS") {
        let budget: u128 = budget.parse().map_err(|_| {
            Outcome::Input(format!("NESTOFAN_BUDGET_MS must be an integer, got {budget:?}"))
        })?;
        if estimate_ms > budget {
            return Err(Outcome::Input(format!(
                "sweep estimated at ~{estimate_ms} ms, over NESTOFAN_BUDGET_MS={budget}; narrow the ranges"
            )));
        }
    }

    let mut checks = Vec::new();
    let mut timing_ms = BTreeMap::new();
    for ((d, n), fan, sym) in &built {
        let start = Instant::now();
        let thm1 = verify_thm1(*d, *n)?;
        checks.push(CheckItem {
            name: format!("thm1 d={d} n={n}"),
            pass: thm1,
            detail: fan_summary(fan),
        });
        let lemma = verify_lemma_join(fan)?;
        checks.push(CheckItem {
            name: format!("lemma-join d={d} n={n}"),
            pass: lemma,
            detail: format!("{} maximal cones", fan.max_cones().len()),
        });
        let order = order_independence_check(sym, ORDER_TRIALS, seed)?;
        checks.push(CheckItem {
            name: format!("order-independence d={d} n={n}"),
            pass: order,
            detail: format!("{} members", sym.members().len()),
        });
        timing_ms.insert(format!("d={d},n={n}"), start.elapsed().as_millis());
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let report = SweepReport {
        instance: format!("sweep d={d_range} n={n_range}"),
        checks,
        timing_ms,
    };
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Outcome::Input(format!("report serialization failed: {e}")))?
        + "\n";
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| Outcome::Input(format!("cannot write {}: {}", path.display(), e)))?;
    }
    print!("{text}");
    if all_pass {
        Ok(())
    } else {
        Err(ChecksFailed.into())
    }
}
