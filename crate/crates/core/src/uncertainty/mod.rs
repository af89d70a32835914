//! Geological and economic uncertainty quantification.

pub mod correlation;
pub mod economics;
pub mod elicitation;
pub mod simulate;

pub use correlation::{
    estimate_spearman, iman_conover, nearest_psd_correlation, CorrelationMatrix, SampleMatrix,
    DEFAULT_PSD_EPS,
};
pub use economics::{emv, epos, gas_reserve_density, npv, oil_reserve_density};
pub use elicitation::{
    beta_posterior_update, beta_prior_from_pert, pert_mean, triangular_inv_cdf, BetaPosterior,
    ThreePointEstimate,
};
pub use simulate::{
    combine_gpos, simulate_prospects, Factor, FactorElicitation, Fluid, ProjectEconomics,
    ProjectSimulation, SimulationConfig, SimulationSummary,
};
