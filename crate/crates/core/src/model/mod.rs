//! The bi-objective drilling portfolio model.

pub mod constraints;
pub mod derive;
pub mod instance;
pub mod objectives;
pub mod project;
pub mod stats;

pub use constraints::{
    evaluate_constraints, is_feasible, ConstraintEntry, ConstraintFamily, ConstraintReport, PlanTargets,
    RegionQuota,
};
pub use derive::{derive_targets, random_well_portfolio, DeriveSettings, DerivedTargets};
pub use instance::{Chromosome, Evaluation, Instance};
pub use objectives::{objective_emv, objective_risk};
pub use project::{Project, ProjectKind};
pub use stats::{Flip, RunningStats};
