//! Building sets, nested fans, symmetric powers, and the Minkowski oracle.

pub mod building;
pub mod minkowski;
pub mod nested;
pub mod sym;

pub use building::{complete_building_set, BuildingMode, BuildingSet, BuildingSetValidation};
pub use minkowski::minkowski_nestohedron_oracle;
pub use nested::{
    nested_fan, nested_fan_with_schedule, order_independence_check, schedule_count,
    subdivision_schedule,
};
pub use sym::{diagonal_compatibility_check, sym_building_set, sym_fan, sym_product_building_set};
