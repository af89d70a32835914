//! Portfolio risk kept up to date one bit flip at a time, checked against
//! recomputing it from scratch.
//!
//!     cargo run -p drillopt --example welford_risk

use drillopt::model::{objective_risk, Flip};
use drillopt::{Project, RunningStats};

fn main() {
    let projects: Vec<Project> = [("A", 13515.0, 0.53), ("B", 8200.0, 0.35), ("C", 22100.0, 0.41), ("D", 5400.0, 0.62)]
        .iter()
        .map(|&(id, npv, pos)| Project::trap(id, "R", 0.0, 0.0, 0.0, npv, pos))
        .collect();

    let mut bits = vec![false; projects.len()];
    let mut stats = RunningStats::new();
    for (step, i) in [0, 2, 1, 3, 2, 0].into_iter().enumerate() {
        let g = projects[i].expected_return();
        let flip = if bits[i] { Flip::Remove } else { Flip::Add };
        let delta = stats.delta_m(g, flip);
        stats = match flip {
            Flip::Add => stats.add(g),
            Flip::Remove => stats.remove(g),
        };
        bits[i] = !bits[i];
        let batch = objective_risk(&bits, &projects);
        println!(
            "step {step}: {:?} {} -> n {}, mean {:9.2}, dM {:+13.2}, risk {:9.3} (from scratch {:9.3})",
            flip,
            projects[i].id,
            stats.n,
            stats.mean,
            delta,
            stats.risk(),
            batch
        );
    }
}
