//! # drillopt
//!
//! Drilling portfolio selection for oil and gas exploration, treated as a
//! constrained bi-objective binary problem: maximise the expected monetary
//! value (EMV) of the selected trap and appraisal projects while minimising
//! the dispersion of their expected returns.
//!
//! The crate is organised as a pipeline:
//!
//! * [`uncertainty`] – three-point elicitation, Beta–Binomial fusion with
//!   sparse history, nearest-PSD correlation repair, Iman–Conover correlated
//!   Monte Carlo, reserve densities, EPoS / NPV / EMV.
//! * [`model`] – projects, chromosomes, the two objectives, the twelve
//!   constraint families and the Welford running statistics.
//! * [`operators`] – directional crossover (DC), structure-aware mutation
//!   (SAM) and the greedy well-count repair they share.
//! * [`solver`] – the NSGA-II engine hosting both the operator-enhanced
//!   variant and a classical baseline.
//! * [`metrics`] – hypervolume, IGD, spacing and set coverage.
//! * [`selection`] – representative solutions (ideal point, knee,
//!   hypervolume contribution) and risk tiers.
//! * [`io`] – CSV ingestion, run configuration and report emission.
//!
//! Runnable walkthroughs for each stage live in `examples/`:
//!
//! ```bash
//! cargo run -p drillopt --release --example gpos_simulation
//! cargo run -p drillopt --example portfolio_model
//! cargo run -p drillopt --example welford_risk
//! cargo run -p drillopt --example derive_targets
//! cargo run -p drillopt --release --example front_metrics
//! cargo run -p drillopt --release --example representative_selection
//! cargo run -p drillopt --release --example compare_variants
//! ```

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod io;
pub mod metrics;
pub mod model;
pub mod operators;
pub mod rng;
pub mod selection;
pub mod solver;
pub mod uncertainty;

pub use error::{Error, Result};
pub use model::{
    Chromosome, ConstraintReport, Evaluation, PlanTargets, Project, ProjectKind, RunningStats,
};
pub use solver::{RunResult, SolverConfig, Variant};
