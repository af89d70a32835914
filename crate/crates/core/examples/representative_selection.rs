//! Representative portfolios from an optimized front: the point nearest the
//! ideal corner, the knee and the largest hypervolume contribution, overall
//! and inside three risk tiers.
//!
//!     cargo run -p drillopt --release --example representative_selection -- [seed]

use std::path::Path;

use drillopt::io::RunConfig;
use drillopt::metrics::reference_point;
use drillopt::model::Instance;
use drillopt::selection::{select, select_per_tier, stratify_by_risk, SelectionMethod};
use drillopt::solver::run;
use drillopt::Variant;

fn main() -> drillopt::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let cfg = RunConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/run.toml"))?;
    let list = drillopt::io::load_prospects(&cfg.data.traps, &cfg.data.appraisals)?;
    let instance = Instance::new(list.projects, cfg.targets.clone())?;
    let result = run(&instance, &cfg.solver.clone().with_seed(seed).with_variant(Variant::Oe))?;
    if !result.feasible {
        println!("seed {seed}: no feasible portfolio found, try another seed");
        return Ok(());
    }

    let points = result.front_points();
    let r = reference_point(&[&points], cfg.metrics.reference_margin).expect("front is non-empty");
    let describe = |i: usize| {
        let e = result.front[i].evaluation();
        let ids: Vec<&str> = instance
            .projects()
            .iter()
            .zip(&result.front[i].bits)
            .filter(|(_, b)| **b)
            .map(|(p, _)| p.id.as_str())
            .collect();
        format!("EMV {:10.1}  risk {:9.1}  {}", e.emv, e.risk, ids.join(" "))
    };

    println!("{} front points\n", points.len());
    for m in SelectionMethod::ALL {
        if let Some(c) = select(&points, m, r) {
            let note = if c.fallback { " (fallback)" } else { "" };
            println!("{:<6}{note} #{:<3} {}", m.name(), c.index, describe(c.index));
        }
    }

    let tiers = stratify_by_risk(&points, 3);
    for (t, picks) in select_per_tier(&points, SelectionMethod::Knee, 3, r).into_iter().enumerate() {
        println!("\ntier {} ({} portfolios)", t + 1, tiers[t].len());
        if let Some(c) = picks {
            println!("  knee #{:<3} {}", c.index, describe(c.index));
        }
    }
    Ok(())
}
