//! Variation operators: directional crossover (DC), structure-aware
//! mutation (SAM), the greedy well-count repair they share, and the
//! classical operators of the reference NSGA-II.

pub mod baseline;
pub mod dc;
pub mod repair;
pub mod sam;
pub mod scoring;

pub use baseline::{bit_flip_mutation, finish_child, uniform_crossover};
pub use dc::{dc_crossover, directional_child};
pub use repair::{greedy_well_repair, repair_by_benefit};
pub use sam::{sam_mutation, sam_with_rho, MutationBudget};
pub use scoring::{
    direction_scores, flip_gain, group_counts, minmax_normalize, region_bias, shortfall_bias, DirectionContext,
    DirectionScores, Preference, NORMALIZE_EPS,
};
