//! The steps behind each subcommand. Every function writes into an output
//! directory and returns what it wrote.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::config::RunConfig;
use super::inputs::{load_economics, load_elicitations, load_history, write_simulation_summary};
use super::prospects::{load_prospects, ProspectList};
use super::report::{
    front_points, read_front, write_front, write_json, write_metric_table, write_rejections, write_representatives,
    write_tiers, write_trace, FrontRecord, RunManifest, ScopedChoice,
};
use crate::error::{Error, Result};
use crate::metrics::{compare_fronts_with_margin, reference_point, MetricTable, Point};
use crate::model::Instance;
use crate::selection::{select, select_per_tier, stratify_by_risk, SelectionMethod};
use crate::solver::{run, RunResult, Variant};
use crate::uncertainty::{simulate_prospects, ProjectSimulation};

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::File {
        path: dir.to_path_buf(),
        message: e.to_string(),
    })
}

/// Per-project GPoS (and, with economics, reserves / NPV / EMV) summaries.
pub fn simulate(cfg: &RunConfig, out_dir: &Path) -> Result<(Vec<ProjectSimulation>, PathBuf)> {
    let sim_cfg = cfg
        .simulation
        .ok_or_else(|| Error::config("the run config has no [simulation] block"))?;
    let elicitation = cfg
        .data
        .elicitation
        .as_ref()
        .ok_or_else(|| Error::config("data.elicitation is required for simulation"))?;
    let elicitations = load_elicitations(elicitation)?;
    let history = cfg.data.history.as_deref().map(load_history).transpose()?;
    let economics = match &cfg.data.economics {
        Some(p) => load_economics(p)?,
        None => Vec::new(),
    };
    let sims = simulate_prospects(&elicitations, history.as_ref(), &economics, &sim_cfg)?;
    ensure_dir(out_dir)?;
    let path = out_dir.join("gpos_summary.csv");
    write_simulation_summary(&path, &sims)?;
    Ok((sims, path))
}

pub struct OptimizeOutputs {
    pub result: RunResult,
    pub front: Vec<FrontRecord>,
    pub manifest: RunManifest,
    pub front_path: PathBuf,
    pub trace_path: PathBuf,
    pub manifest_path: PathBuf,
    /// Reloadable echo of the effective configuration.
    pub config_path: PathBuf,
}

pub fn load_run_prospects(cfg: &RunConfig) -> Result<ProspectList> {
    load_prospects(&cfg.data.traps, &cfg.data.appraisals)
}

/// One solver run. Writes `front.csv`, `trace.csv`, `manifest.json`,
/// `config.toml` and, when rows were rejected, `rejected.csv`.
pub fn optimize(cfg: &RunConfig, out_dir: &Path) -> Result<OptimizeOutputs> {
    let started = Instant::now();
    let prospects = load_run_prospects(cfg)?;
    let instance = Instance::new(prospects.projects.clone(), cfg.targets.clone())?;
    let result = run(&instance, &cfg.solver)?;
    let wall = started.elapsed().as_secs_f64();

    ensure_dir(out_dir)?;
    let front: Vec<FrontRecord> = result.front.iter().map(|c| FrontRecord::from_chromosome(&instance, c)).collect();
    let front_path = out_dir.join("front.csv");
    write_front(&front_path, &front)?;

    let snapshots: Vec<&[Point]> = result.history.iter().map(|g| g.archive.as_slice()).collect();
    let r = reference_point(&snapshots, cfg.metrics.reference_margin).unwrap_or([0.0, 0.0]);
    let trace_path = out_dir.join("trace.csv");
    write_trace(&trace_path, &result.history, r)?;

    if !prospects.rejected.is_empty() {
        write_rejections(&out_dir.join("rejected.csv"), &prospects.rejected)?;
    }
    let config_path = out_dir.join("config.toml");
    std::fs::write(&config_path, cfg.to_toml()?)?;

    let manifest = RunManifest {
        tool: format!("drillopt {}", env!("CARGO_PKG_VERSION")),
        variant: cfg.solver.variant,
        seed: cfg.solver.seed,
        generations: cfg.solver.generations,
        pop_size: cfg.solver.pop_size,
        evaluations: result.evaluations,
        wall_time_secs: wall,
        front_size: front.len(),
        feasible: result.feasible,
        rejected_rows: prospects.rejected,
        config: cfg.clone(),
    };
    let manifest_path = out_dir.join("manifest.json");
    write_json(&manifest_path, &manifest)?;

    Ok(OptimizeOutputs {
        result,
        front,
        manifest,
        front_path,
        trace_path,
        manifest_path,
        config_path,
    })
}

fn front_name(path: &Path, taken: &[String]) -> String {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let parent = path
        .parent()
        .and_then(Path::file_name)
        .map(|s| s.to_string_lossy().into_owned());
    let base = match parent {
        Some(p) if stem == "front" => p,
        _ => stem,
    };
    if taken.contains(&base) {
        path.display().to_string()
    } else {
        base
    }
}

/// Metric table over two or more front files; the first is the reference
/// method for the coverage columns. Only feasible records are scored.
pub fn compare_front_files(fronts: &[PathBuf], margin: f64, out: &Path) -> Result<MetricTable> {
    if fronts.len() < 2 {
        return Err(Error::input("metrics needs at least two fronts"));
    }
    let mut named: Vec<(String, Vec<Point>)> = Vec::new();
    for p in fronts {
        let taken: Vec<String> = named.iter().map(|(n, _)| n.clone()).collect();
        let feasible: Vec<FrontRecord> = read_front(p)?.into_iter().filter(|r| r.feasible).collect();
        named.push((front_name(p, &taken), front_points(&feasible)));
    }
    let table = compare_fronts_with_margin(&named, margin).ok_or_else(|| Error::input("all fronts are empty"))?;
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        ensure_dir(parent)?;
    }
    write_metric_table(out, &table)?;
    Ok(table)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectOptions {
    pub methods: Vec<SelectionMethod>,
    pub tiers: usize,
    pub per_tier: bool,
    pub reference_margin: f64,
}

pub struct SelectOutputs {
    pub front: Vec<FrontRecord>,
    pub choices: Vec<ScopedChoice>,
    pub tiers: Vec<Vec<usize>>,
    pub representatives_path: PathBuf,
    pub tiers_path: PathBuf,
}

/// Representatives and risk-tier membership for a front file. Writes
/// `representatives.csv` and `tiers.csv` into `out_dir`.
pub fn select_from_front(front_path: &Path, opts: &SelectOptions, out_dir: &Path) -> Result<SelectOutputs> {
    if opts.tiers < 1 {
        return Err(Error::input("tiers must be at least 1"));
    }
    let front = read_front(front_path)?;
    if front.is_empty() {
        return Err(Error::File {
            path: front_path.to_path_buf(),
            message: "front is empty".into(),
        });
    }
    let points = front_points(&front);
    let r = reference_point(&[&points], opts.reference_margin).expect("front is non-empty");
    let mut choices = Vec::new();
    for &m in &opts.methods {
        if let Some(choice) = select(&points, m, r) {
            choices.push(ScopedChoice { tier: None, choice });
        }
        if opts.per_tier {
            for (t, c) in select_per_tier(&points, m, opts.tiers, r).into_iter().enumerate() {
                if let Some(choice) = c {
                    choices.push(ScopedChoice { tier: Some(t), choice });
                }
            }
        }
    }
    let tiers = stratify_by_risk(&points, opts.tiers);
    ensure_dir(out_dir)?;
    let representatives_path = out_dir.join("representatives.csv");
    let tiers_path = out_dir.join("tiers.csv");
    write_representatives(&representatives_path, &front, &choices)?;
    write_tiers(&tiers_path, &front, &tiers)?;
    Ok(SelectOutputs {
        front,
        choices,
        tiers,
        representatives_path,
        tiers_path,
    })
}

#[derive(Debug, Clone, Serialize)]
struct ReportIndex {
    tool: String,
    files: Vec<PathBuf>,
}

/// The whole pipeline for one config: simulation (when configured), both
/// solver variants, the metric table and representatives on the
/// operator-enhanced front. Returns every file written, relative to
/// `out_dir`; the list is also stored in `report.json`.
pub fn report(cfg: &RunConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(out_dir)?;
    let mut files = Vec::new();
    if cfg.simulation.is_some() && cfg.data.elicitation.is_some() {
        files.push(simulate(cfg, out_dir)?.1);
    }
    let mut fronts = Vec::new();
    for variant in [Variant::Oe, Variant::Baseline] {
        let mut c = cfg.clone();
        c.solver.variant = variant;
        let o = optimize(&c, &out_dir.join(variant.name()))?;
        fronts.push(o.front_path.clone());
        files.extend([o.front_path, o.trace_path, o.manifest_path, o.config_path]);
    }
    let metrics_path = out_dir.join("metrics.csv");
    compare_front_files(&fronts, cfg.metrics.reference_margin, &metrics_path)?;
    files.push(metrics_path);
    let opts = SelectOptions {
        methods: cfg.selection.methods.clone(),
        tiers: cfg.selection.tiers,
        per_tier: cfg.selection.per_tier,
        reference_margin: cfg.metrics.reference_margin,
    };
    let sel = select_from_front(&fronts[0], &opts, out_dir)?;
    files.extend([sel.representatives_path, sel.tiers_path]);

    let relative: Vec<PathBuf> = files
        .iter()
        .map(|f| f.strip_prefix(out_dir).map(Path::to_path_buf).unwrap_or_else(|_| f.clone()))
        .collect();
    write_json(
        &out_dir.join("report.json"),
        &ReportIndex {
            tool: format!("drillopt {}", env!("CARGO_PKG_VERSION")),
            files: relative.clone(),
        },
    )?;
    Ok(relative)
}
