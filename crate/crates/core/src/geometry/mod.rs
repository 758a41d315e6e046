//! Exact lattice geometry: vectors, cones, and simplicial fans.

pub mod cone;
pub mod fan;
pub mod label;
pub mod lattice;
pub mod linalg;
pub mod lp;

pub use cone::Cone;
pub use fan::{fan_equal, labeled_simplex_power, simplex_fan, CanonicalFan, Fan, FanValidation};
pub use label::Label;
pub use lattice::{eliminate_last, LatticeVector};
