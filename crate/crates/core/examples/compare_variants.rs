//! Operator-enhanced NSGA-II against the classical baseline on the bundled
//! prospect lists: hypervolume per seed under one shared reference point,
//! plus how fast the enhanced variant's archive hypervolume settles.
//!
//!     cargo run -p drillopt --release --example compare_variants -- [seeds] [generations]

use std::path::Path;

use drillopt::io::RunConfig;
use drillopt::metrics::{hv_trace, hypervolume, reference_point, Point};
use drillopt::model::Instance;
use drillopt::solver::{run, RunResult};
use drillopt::Variant;

fn feasible_front(r: &RunResult) -> Vec<Point> {
    r.front.iter().filter(|c| c.evaluation().is_feasible()).map(|c| c.evaluation().canonical()).collect()
}

/// First generation whose archive HV reaches `share` of the final value.
fn settle_generation(r: &RunResult, share: f64) -> Option<usize> {
    let snaps: Vec<&[Point]> = r.history.iter().map(|g| g.archive.as_slice()).collect();
    let rp = reference_point(&snaps, 0.1)?;
    let trace = hv_trace(snaps, rp);
    let last = *trace.last()?;
    trace.iter().position(|h| *h >= share * last)
}

fn main() -> drillopt::Result<()> {
    let mut args = std::env::args().skip(1);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let generations: Option<usize> = args.next().and_then(|s| s.parse().ok());

    let cfg = RunConfig::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("data/run.toml"))?;
    let list = drillopt::io::load_prospects(&cfg.data.traps, &cfg.data.appraisals)?;
    let instance = Instance::new(list.projects, cfg.targets.clone())?;

    let mut runs = Vec::new();
    for seed in 1..=seeds {
        let mut pair = Vec::new();
        for variant in [Variant::Oe, Variant::Baseline] {
            let mut solver = cfg.solver.clone().with_variant(variant).with_seed(seed);
            if let Some(g) = generations {
                solver.generations = g;
            }
            pair.push(run(&instance, &solver)?);
        }
        runs.push(pair);
    }

    let fronts: Vec<Vec<Point>> = runs.iter().flatten().map(feasible_front).collect();
    let refs: Vec<&[Point]> = fronts.iter().map(Vec::as_slice).collect();
    let Some(r) = reference_point(&refs, 0.1) else {
        println!("no run found a feasible portfolio");
        return Ok(());
    };
    println!("shared reference point: (-EMV {:.1}, risk {:.1})", r[0], r[1]);
    println!("{:>5} {:>14} {:>14} {:>8} {:>12}", "seed", "HV oe", "HV baseline", "ratio", "oe settles");

    let mut ratios = Vec::new();
    let mut wins = 0;
    for (k, pair) in runs.iter().enumerate() {
        let hv_oe = hypervolume(&fronts[2 * k], r);
        let hv_base = hypervolume(&fronts[2 * k + 1], r);
        let ratio = if hv_base > 0.0 { hv_oe / hv_base } else { f64::INFINITY };
        if hv_oe > hv_base {
            wins += 1;
        }
        ratios.push(ratio);
        let settle = settle_generation(&pair[0], 0.95).map_or("-".to_string(), |g| g.to_string());
        println!("{:>5} {:>14.6e} {:>14.6e} {:>8.3} {:>12}", k + 1, hv_oe, hv_base, ratio, settle);
    }
    ratios.sort_by(f64::total_cmp);
    let mid = ratios.len() / 2;
    let median = if ratios.len() % 2 == 0 { 0.5 * (ratios[mid - 1] + ratios[mid]) } else { ratios[mid] };
    println!("enhanced variant wins {wins}/{seeds}, median HV ratio {median:.3}");
    Ok(())
}
