use std::path::Path;

use super::table::Table;
use super::fixed;
use crate::error::{Error, Result};
use crate::uncertainty::{
    Factor, FactorElicitation, Fluid, ProjectEconomics, ProjectSimulation, SampleMatrix, ThreePointEstimate,
};

pub const ELICITATION_COLUMNS: [&str; 8] = ["project_id", "factor", "a", "b", "c", "k", "s", "f"];
pub const ECONOMICS_COLUMNS: [&str; 16] = [
    "project_id",
    "fluid",
    "area_km2",
    "phi_min",
    "phi_mode",
    "phi_max",
    "sat_min",
    "sat_mode",
    "sat_max",
    "density",
    "volume_factor",
    "npv_min",
    "npv_mode",
    "npv_max",
    "cost",
    "p_mefs",
];
pub const SUMMARY_COLUMNS: [&str; 13] = [
    "project_id",
    "gpos_mean",
    "gpos_std",
    "gpos_p90",
    "gpos_p50",
    "gpos_p10",
    "epos",
    "reserves_p90",
    "reserves_p50",
    "reserves_p10",
    "reserves_pmean",
    "npv",
    "emv",
];

/// Expert three-point estimates with optional outcome counts. Missing `s`
/// and `f` mean no history for that factor.
pub fn load_elicitations(path: &Path) -> Result<Vec<FactorElicitation>> {
    let table = Table::read(path)?;
    table.require(&ELICITATION_COLUMNS[..6])?;
    let mut out = Vec::new();
    for row in table.rows() {
        let factor: Factor = row.str("factor")?.parse().map_err(|e: Error| row.error("factor", e.to_string()))?;
        let estimate = ThreePointEstimate::new(row.f64("a")?, row.f64("b")?, row.f64("c")?)
            .map_err(|e| row.error("b", e.to_string()))?;
        out.push(FactorElicitation {
            project_id: row.str("project_id")?.to_string(),
            factor,
            estimate,
            k: row.f64("k")?,
            successes: row.opt_count("s")?.unwrap_or(0),
            failures: row.opt_count("f")?.unwrap_or(0),
        });
    }
    Ok(out)
}

/// Historical per-well factor outcomes, one column per factor name.
pub fn load_history(path: &Path) -> Result<SampleMatrix> {
    let table = Table::read(path)?;
    let names: Vec<&str> = Factor::ALL.iter().map(|f| f.name()).collect();
    table.require(&names)?;
    let mut columns = vec![Vec::new(); names.len()];
    for row in table.rows() {
        for (col, name) in columns.iter_mut().zip(&names) {
            col.push(row.f64(name)?);
        }
    }
    SampleMatrix::from_columns(columns).map_err(|e| Error::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_economics(path: &Path) -> Result<Vec<ProjectEconomics>> {
    let table = Table::read(path)?;
    table.require(&ECONOMICS_COLUMNS)?;
    let mut out = Vec::new();
    for row in table.rows() {
        let fluid = match row.str("fluid")?.to_ascii_lowercase().as_str() {
            "oil" => Fluid::Oil,
            "gas" => Fluid::Gas,
            other => return Err(row.error("fluid", format!("expected oil or gas, got `{other}`"))),
        };
        let tpe = |prefix: &str| -> Result<ThreePointEstimate> {
            let lo = row.f64(&format!("{prefix}_min"))?;
            let mode = row.f64(&format!("{prefix}_mode"))?;
            let hi = row.f64(&format!("{prefix}_max"))?;
            ThreePointEstimate::new(lo, mode, hi).map_err(|e| row.error(&format!("{prefix}_mode"), e.to_string()))
        };
        out.push(ProjectEconomics {
            project_id: row.str("project_id")?.to_string(),
            fluid,
            area_km2: row.f64("area_km2")?,
            porosity: tpe("phi")?,
            saturation: tpe("sat")?,
            density: row.f64("density")?,
            volume_factor: row.f64("volume_factor")?,
            npv: tpe("npv")?,
            cost: row.f64("cost")?,
            p_mefs: row.f64("p_mefs")?,
        });
    }
    Ok(out)
}

/// Per-project summary table; absent economics leave empty cells.
pub fn write_simulation_summary(path: &Path, sims: &[ProjectSimulation]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SUMMARY_COLUMNS)?;
    let opt = |v: Option<f64>| v.map(fixed).unwrap_or_default();
    for s in sims {
        let r = s.reserves;
        w.write_record([
            s.project_id.clone(),
            fixed(s.gpos.mean),
            fixed(s.gpos.stddev),
            fixed(s.gpos.p90),
            fixed(s.gpos.p50),
            fixed(s.gpos.p10),
            fixed(s.epos),
            opt(r.map(|r| r.p90)),
            opt(r.map(|r| r.p50)),
            opt(r.map(|r| r.p10)),
            opt(r.map(|r| r.pmean())),
            opt(s.npv),
            opt(s.emv),
        ])?;
    }
    w.flush()?;
    Ok(())
}
