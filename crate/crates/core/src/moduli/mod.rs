//! Weight vectors for point configurations, the loci they forbid, the
//! blow-up fans they prescribe, and the verification harness tying those
//! fans to the symmetric-power nested fans.

pub mod blowup;
pub mod checks;
pub mod stability;
pub mod weights;

pub use blowup::{blowup_fan, blowup_fan_with_schedule, center_schedule};
pub use checks::{
    chamber_signature, hassett_prime_weights, lm_type_weights, small_case_note, sym_side_fan,
    verify_lemma_join, verify_thm1, verify_thm2, verify_thm3_part1, verify_thm3_part2, CheckItem,
    CheckReport,
};
pub use stability::{
    heavy_loci, induced_building_set, is_toric_chamber, promoted_subsets, LocusIndex,
};
pub use weights::{losev_manin_weights, validate_weight, weight_floor, WeightVector};
