//! Exact-arithmetic fans, nested-set subdivisions, and weighted-stability
//! checks for compactified moduli problems.
//!
//! The crate is organized in three layers:
//!
//! * [`geometry`] — lattice vectors, simplicial cones, and fans with exact
//!   validity, refinement, and equality tests;
//! * [`nestohedra`] — building sets, their nested-set fans, symmetric-power
//!   constructions, and a desk-scale polytope oracle;
//! * [`moduli`] — weight vectors, stability thresholds, and the iterated
//!   blow-up fans they prescribe, with the comparison routines that tie the
//!   two sides together.
//!
//! [`io`] adds canonical JSON for every object above, and [`render`] draws
//! rank-2 fans as SVG.

pub mod error;
pub mod geometry;
pub mod io;
pub mod moduli;
pub mod nestohedra;
pub mod render;

pub use error::{Error, Result};
pub use geometry::{fan_equal, Cone, Fan, Label, LatticeVector};
pub use io::{
    building_set_from_str, building_set_to_canonical_string, fan_from_str,
    fan_to_canonical_string, report_to_canonical_string, weight_from_str,
    weight_to_canonical_string,
};
pub use moduli::{CheckItem, CheckReport, WeightVector};
pub use nestohedra::{BuildingMode, BuildingSet};
pub use render::render_svg;
