//! NSGA-II engine hosting the operator-enhanced variant and the classical
//! baseline under identical survival, constraint handling and repair.

pub mod config;
pub mod engine;
pub mod sorting;

pub use config::{SolverConfig, Variant};
pub use engine::{run, solve, GenerationRecord, RunResult};
pub use sorting::{crowding_distance, dominates, fast_nondominated_sort, nondominated_fronts_by, pareto_dominates};
