//! SVG rendering of rank-2 complete fans.
//!
//! Two panels: the fan itself (rays as labeled arrows from the origin,
//! maximal cones as shaded sectors) and, beside it, the dual polygon with
//! one vertex per maximal cone, ordered cyclically. All geometric decisions
//! (cyclic order, cone orientation) are made in exact integer arithmetic;
//! floating point appears only when formatting screen coordinates.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{Fan, LatticeVector};

const WIDTH: f64 = 600.0;
const HEIGHT: f64 = 300.0;
const FAN_CENTER: (f64, f64) = (150.0, 150.0);
const DUAL_CENTER: (f64, f64) = (450.0, 150.0);
const RAY_LENGTH: f64 = 100.0;
const SECTOR_RADIUS: f64 = 92.0;
const LABEL_RADIUS: f64 = 116.0;
const DUAL_RADIUS: f64 = 70.0;

fn cross(a: &LatticeVector, b: &LatticeVector) -> BigInt {
    let (ax, ay) = (&a.coords()[0], &a.coords()[1]);
    let (bx, by) = (&b.coords()[0], &b.coords()[1]);
    ax * by - ay * bx
}

/// Exact counterclockwise order starting from the positive x-axis: first the
/// closed upper half plane, then the lower, each swept by cross-product sign.
fn cyclic_cmp(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    fn half(v: &LatticeVector) -> u8 {
        let (x, y) = (&v.coords()[0], &v.coords()[1]);
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn unit(v: &LatticeVector) -> (f64, f64) {
    let x = v.coords()[0].to_f64().unwrap_or(0.0);
    let y = v.coords()[1].to_f64().unwrap_or(0.0);
    let norm = (x * x + y * y).sqrt();
    (x / norm, y / norm)
}

/// Map a mathematical direction to screen coordinates (screen y grows
/// downward, so the y component flips).
fn place(center: (f64, f64), dir: (f64, f64), radius: f64) -> (f64, f64) {
    (center.0 + radius * dir.0, center.1 - radius * dir.1)
}

fn fmt_point(p: (f64, f64)) -> String {
    format!("{:.4},{:.4}", p.0, p.1)
}

/// Render a complete rank-2 fan as a standalone SVG document.
pub fn render_svg(fan: &Fan) -> Result<String> {
    if fan.rank() != 2 {
        return Err(Error::RenderRank { got: fan.rank() });
    }
    if !fan.is_complete() {
        return Err(Error::invalid(
            "render needs a complete fan covering the plane",
        ));
    }

    // Orient every maximal cone counterclockwise, then order the cones
    // cyclically by their first ray. Completeness of a rank-2 fan forces
    // every maximal cone to be two-dimensional.
    let rays = fan.rays();
    let mut sectors: Vec<(usize, usize)> = Vec::with_capacity(fan.max_cones().len());
    for cone in fan.max_cones() {
        let idx = cone.rays();
        if idx.len() != 2 {
            return Err(Error::internal(format!(
                "complete rank-2 fan holds a maximal cone with {} rays",
                idx.len()
            )));
        }
        let (i, j) = (idx[0], idx[1]);
        if cross(&rays[i], &rays[j]).is_positive() {
            sectors.push((i, j));
        } else {
            sectors.push((j, i));
        }
    }
    sectors.sort_by(|a, b| cyclic_cmp(&rays[a.0], &rays[b.0]));

    let mut ray_order: Vec<usize> = (0..rays.len()).collect();
    ray_order.sort_by(|&a, &b| cyclic_cmp(&rays[a], &rays[b]));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(svg, "  <defs>");
    let _ = writeln!(
        svg,
        "    <marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" \
         orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 Z\" fill=\"#333333\"/></marker>"
    );
    let _ = writeln!(svg, "  </defs>");
    let _ = writeln!(
        svg,
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    );

    // Shaded sectors, one per maximal cone.
    let n_sectors = sectors.len();
    for (k, &(i, j)) in sectors.iter().enumerate() {
        let p1 = place(FAN_CENTER, unit(&rays[i]), SECTOR_RADIUS);
        let p2 = place(FAN_CENTER, unit(&rays[j]), SECTOR_RADIUS);
        let hue = 360.0 * k as f64 / n_sectors as f64;
        let _ = writeln!(
            svg,
            "  <path class=\"sector\" d=\"M {} L {} A {:.4} {:.4} 0 0 0 {} Z\" \
             fill=\"hsl({:.4}, 70%, 88%)\" stroke=\"none\"/>",
            fmt_point(FAN_CENTER),
            fmt_point(p1),
            SECTOR_RADIUS,
            SECTOR_RADIUS,
            fmt_point(p2),
            hue
        );
    }

    // Rays as arrows, drawn over the sectors, with their labels outside.
    for &i in &ray_order {
        let dir = unit(&rays[i]);
        let tip = place(FAN_CENTER, dir, RAY_LENGTH);
        let _ = writeln!(
            svg,
            "  <line class=\"ray\" x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" \
             stroke=\"#333333\" stroke-width=\"1.5\" marker-end=\"url(#tip)\"/>",
            FAN_CENTER.0, FAN_CENTER.1, tip.0, tip.1
        );
        if let Some(label) = fan.label(i) {
            let at = place(FAN_CENTER, dir, LABEL_RADIUS);
            let _ = writeln!(
                svg,
                "  <text class=\"ray-label\" x=\"{:.4}\" y=\"{:.4}\" font-size=\"11\" \
                 text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#333333\">{}</text>",
                at.0, at.1, label
            );
        }
    }

    // Dual polygon: one vertex per maximal cone, opposite the cone's
    // direction, in the same cyclic order.
    let mut points = Vec::with_capacity(sectors.len());
    for &(i, j) in &sectors {
        let u1 = unit(&rays[i]);
        let u2 = unit(&rays[j]);
        let sum = (u1.0 + u2.0, u1.1 + u2.1);
        let norm = (sum.0 * sum.0 + sum.1 * sum.1).sqrt();
        let dir = (-sum.0 / norm, -sum.1 / norm);
        points.push(fmt_point(place(DUAL_CENTER, dir, DUAL_RADIUS)));
    }
    let _ = writeln!(
        svg,
        "  <polygon class=\"dual\" points=\"{}\" fill=\"#eeeeee\" stroke=\"#333333\" \
         stroke-width=\"1.5\"/>",
        points.join(" ")
    );
    for p in &points {
        let mut parts = p.split(',');
        let (x, y) = (parts.next().unwrap(), parts.next().unwrap());
        let _ = writeln!(
            svg,
            "  <circle class=\"dual-vertex\" cx=\"{x}\" cy=\"{y}\" r=\"2.5\" fill=\"#333333\"/>"
        );
    }

    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}
