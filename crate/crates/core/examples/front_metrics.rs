//! Hypervolume, IGD, spacing and set coverage for both solver variants on
//! the bundled data, written as a metric table.
//!
//!     cargo run -p drillopt --release --example front_metrics -- [seed] [out.csv]

use std::path::{Path, PathBuf};

use drillopt::io::{write_metric_table, RunConfig};
use drillopt::metrics::compare_fronts;
use drillopt::model::Instance;
use drillopt::solver::run;
use drillopt::Variant;

fn main() -> drillopt::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let out = args.next().map(PathBuf::from);

    let cfg = RunConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/run.toml"))?;
    let list = drillopt::io::load_prospects(&cfg.data.traps, &cfg.data.appraisals)?;
    let instance = Instance::new(list.projects, cfg.targets.clone())?;

    let mut named = Vec::new();
    for variant in [Variant::Oe, Variant::Baseline] {
        let r = run(&instance, &cfg.solver.clone().with_seed(seed).with_variant(variant))?;
        let feasible: Vec<[f64; 2]> = r
            .front
            .iter()
            .filter(|c| c.evaluation().is_feasible())
            .map(|c| c.evaluation().canonical())
            .collect();
        println!("{}: {} feasible front points", variant.label(), feasible.len());
        named.push((variant.label().to_string(), feasible));
    }

    let table = compare_fronts(&named).ok_or_else(|| drillopt::Error::InvalidInput("no feasible front".into()))?;
    println!("reference point (-EMV, risk): ({:.1}, {:.1})", table.reference_point[0], table.reference_point[1]);
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
    println!("{:<12} {:>14} {:>12} {:>12} {:>8} {:>8}", "algorithm", "HV", "IGD", "spacing", "SC(r,x)", "SC(x,r)");
    for r in &table.rows {
        println!(
            "{:<12} {:>14.6e} {:>12} {:>12} {:>8} {:>8}",
            r.name,
            r.hv,
            opt(r.igd),
            opt(r.spacing),
            opt(r.sc_ref_over),
            opt(r.sc_over_ref)
        );
    }
    if let Some(path) = out {
        write_metric_table(&path, &table)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
