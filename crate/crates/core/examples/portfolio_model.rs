//! The portfolio model on the bundled prospect lists: per-project EMV
//! contributions, objectives of a hand-built portfolio and its constraint
//! slack under the bundled targets.
//!
//!     cargo run -p drillopt --example portfolio_model

use std::path::Path;

use drillopt::io::RunConfig;
use drillopt::model::{ConstraintFamily, Instance};
use drillopt::ProjectKind;

fn main() -> drillopt::Result<()> {
    let cfg = RunConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/run.toml"))?;
    let list = drillopt::io::load_prospects(&cfg.data.traps, &cfg.data.appraisals)?;
    for r in &list.rejected {
        println!("skipped {} (line {}): {}", r.id, r.line, r.reason);
    }
    let instance = Instance::new(list.projects, cfg.targets.clone())?;

    println!("\n{:<7} {:<9} {:>3} {:>6} {:>10} {:>10}", "id", "kind", "w", "pos", "EMV", "npv*pos");
    for p in instance.projects() {
        let kind = match p.kind {
            ProjectKind::Trap => "trap",
            ProjectKind::Appraisal => "appraisal",
        };
        println!(
            "{:<7} {:<9} {:>3} {:>6.2} {:>10.1} {:>10.1}",
            p.id,
            kind,
            p.well_count,
            p.pos,
            p.emv_contribution(),
            p.expected_return()
        );
    }

    // Greedy by EMV per well until the well total is reached, then every
    // reserve-only project.
    let mut order: Vec<usize> = (0..instance.len()).filter(|&i| instance.wells()[i] > 0).collect();
    let per_well = |i: usize| instance.projects()[i].emv_contribution() / instance.wells()[i] as f64;
    order.sort_by(|&a, &b| per_well(b).total_cmp(&per_well(a)));
    let mut bits: Vec<bool> = instance.wells().iter().map(|w| *w == 0).collect();
    instance.enforce_mandatory(&mut bits);
    for i in order {
        let left = instance.well_target() as i64 - instance.well_sum(&bits);
        if !bits[i] && instance.wells()[i] as i64 <= left {
            bits[i] = true;
        }
    }

    let e = instance.evaluate_bits(&bits);
    println!("\ngreedy portfolio: {} projects, {} wells", bits.iter().filter(|b| **b).count(), instance.well_sum(&bits));
    println!("EMV {:.1}, risk {:.1}, feasible: {}", e.emv, e.risk, e.is_feasible());
    for f in ConstraintFamily::ALL {
        let entry = e.report.get(f);
        let mark = if entry.slack < 0.0 { "violated" } else { "" };
        println!("  {:<18} slack {:>12.2} {mark}", f.name(), entry.slack + 0.0);
    }
    Ok(())
}
