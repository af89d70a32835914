//! GPoS for the bundled trap elicitations: Beta posteriors from the expert
//! triangles and drilling history, rank correlation from the history
//! repaired to positive definite, Iman–Conover sampling, then the product
//! of the five factors per project.
//!
//!     cargo run -p drillopt --release --example gpos_simulation

use std::path::Path;

use drillopt::io::{load_economics, load_elicitations, load_history};
use drillopt::uncertainty::{estimate_spearman, nearest_psd_correlation, simulate_prospects, SimulationConfig, DEFAULT_PSD_EPS};

fn main() -> drillopt::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let elicitations = load_elicitations(&data.join("elicitation.csv"))?;
    let history = load_history(&data.join("history.csv"))?;
    let economics = load_economics(&data.join("economics.csv"))?;

    let raw = estimate_spearman(&history)?;
    let repaired = nearest_psd_correlation(&raw, DEFAULT_PSD_EPS)?;
    println!(
        "history: {} wells, Spearman min eigenvalue {:.4} -> {:.4} after repair",
        history.nrows(),
        raw.min_eigenvalue(),
        repaired.min_eigenvalue()
    );

    let config = SimulationConfig::default();
    let sims = simulate_prospects(&elicitations, Some(&history), &economics, &config)?;
    println!("\n{:<8} {:>7} {:>7} {:>7} {:>7} {:>7} {:>7} {:>10}", "project", "mean", "sd", "P90", "P50", "P10", "EPoS", "EMV");
    for s in &sims {
        let emv = s.emv.map_or_else(|| "-".to_string(), |v| format!("{v:.1}"));
        println!(
            "{:<8} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {:>10}",
            s.project_id, s.gpos.mean, s.gpos.stddev, s.gpos.p90, s.gpos.p50, s.gpos.p10, s.epos, emv
        );
    }
    println!("\n{} samples per project, seed {}", config.samples, config.seed);
    Ok(())
}
