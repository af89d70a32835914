use std::path::Path;

use serde::Serialize;

use super::config::RunConfig;
use super::fixed;
use super::prospects::RowRejection;
use super::table::Table;
use crate::error::{Error, Result};
use crate::metrics::{hypervolume, MetricTable, Point};
use crate::model::{Chromosome, ConstraintFamily, Instance};
use crate::selection::RepresentativeChoice;
use crate::solver::{GenerationRecord, Variant};

/// One solution as stored in a front file.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontRecord {
    pub bits: Vec<bool>,
    pub selected: Vec<String>,
    pub emv: f64,
    pub risk: f64,
    pub feasible: bool,
    pub violation: f64,
    /// Signed slack per constraint family, in family order.
    pub slack: Vec<f64>,
}

impl FrontRecord {
    pub fn from_chromosome(instance: &Instance, c: &Chromosome) -> Self {
        let e = c.evaluation();
        Self {
            bits: c.bits.clone(),
            selected: instance
                .projects()
                .iter()
                .zip(&c.bits)
                .filter(|(_, b)| **b)
                .map(|(p, _)| p.id.clone())
                .collect(),
            emv: e.emv,
            risk: e.risk,
            feasible: e.is_feasible(),
            violation: e.violation(),
            slack: ConstraintFamily::ALL.iter().map(|f| e.report.get(*f).slack).collect(),
        }
    }

    /// Canonical `(-emv, risk)`.
    pub fn point(&self) -> Point {
        [-self.emv, self.risk]
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
    }
}

pub fn front_points(records: &[FrontRecord]) -> Vec<Point> {
    records.iter().map(FrontRecord::point).collect()
}

fn slack_column(f: ConstraintFamily) -> String {
    format!("slack_{}", f.name())
}

pub fn write_front(path: &Path, records: &[FrontRecord]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header: Vec<String> = ["index", "bits", "selected", "emv", "risk", "feasible", "violation"]
        .map(String::from)
        .to_vec();
    header.extend(ConstraintFamily::ALL.map(slack_column));
    w.write_record(&header)?;
    for (i, r) in records.iter().enumerate() {
        let mut row = vec![
            i.to_string(),
            r.bit_string(),
            r.selected.join(";"),
            fixed(r.emv),
            fixed(r.risk),
            r.feasible.to_string(),
            fixed(r.violation),
        ];
        row.extend(r.slack.iter().map(|s| fixed(*s)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_front(path: &Path) -> Result<Vec<FrontRecord>> {
    let table = Table::read_allow_empty(path)?;
    table.require(&["bits", "emv", "risk"])?;
    let mut out = Vec::new();
    for row in table.rows() {
        let bits = Chromosome::from_bit_string(row.str("bits")?)
            .map_err(|e| row.error("bits", e.to_string()))?
            .bits;
        let feasible = match row.opt_str("feasible") {
            None => true,
            Some(s) => s.parse().map_err(|_| row.error("feasible", format!("`{s}` is not true/false")))?,
        };
        let mut slack = Vec::new();
        for f in ConstraintFamily::ALL {
            if let Some(v) = row.opt_extended_f64(&slack_column(f))? {
                slack.push(v);
            }
        }
        out.push(FrontRecord {
            bits,
            selected: row
                .opt_str("selected")
                .map(|s| s.split(';').map(String::from).collect())
                .unwrap_or_default(),
            emv: row.f64("emv")?,
            risk: row.f64("risk")?,
            feasible,
            violation: row.opt_f64("violation")?.unwrap_or(0.0),
            slack,
        });
    }
    Ok(out)
}

/// Per-generation counts and archive hypervolume under `r`.
pub fn write_trace(path: &Path, history: &[GenerationRecord], r: Point) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["generation", "feasible", "best_emv", "archive_size", "hv"])?;
    for g in history {
        w.write_record([
            g.generation.to_string(),
            g.feasible.to_string(),
            g.best_emv.map(fixed).unwrap_or_default(),
            g.archive.len().to_string(),
            fixed(hypervolume(&g.archive, r)),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// What ran, how long it took and the full configuration to rerun it.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub variant: Variant,
    pub seed: u64,
    pub generations: usize,
    pub pop_size: usize,
    pub evaluations: usize,
    pub wall_time_secs: f64,
    pub front_size: usize,
    pub feasible: bool,
    pub rejected_rows: Vec<RowRejection>,
    pub config: RunConfig,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn opt_metric(v: Option<f64>) -> String {
    v.map(fixed).unwrap_or_else(|| "NaN".into())
}

/// One line per algorithm: HV, IGD, spacing and the two coverage values
/// against the first (reference) algorithm.
pub fn write_metric_table(path: &Path, table: &MetricTable) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["algorithm", "hv", "igd", "spacing", "sc_ref_over_x", "sc_x_over_ref"])?;
    for r in &table.rows {
        w.write_record([
            r.name.clone(),
            fixed(r.hv),
            opt_metric(r.igd),
            opt_metric(r.spacing),
            opt_metric(r.sc_ref_over),
            opt_metric(r.sc_over_ref),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// A chosen representative, globally (`tier = None`) or inside one tier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScopedChoice {
    pub tier: Option<usize>,
    pub choice: RepresentativeChoice,
}

pub fn write_representatives(path: &Path, front: &[FrontRecord], choices: &[ScopedChoice]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "scope", "method", "index", "bits", "emv", "risk", "norm_obj1", "norm_obj2", "score", "fallback",
    ])?;
    for c in choices {
        let r = &front[c.choice.index];
        w.write_record([
            c.tier.map_or_else(|| "global".to_string(), |t| format!("tier{}", t + 1)),
            c.choice.method.name().to_string(),
            c.choice.index.to_string(),
            r.bit_string(),
            fixed(r.emv),
            fixed(r.risk),
            fixed(c.choice.normalized[0]),
            fixed(c.choice.normalized[1]),
            fixed(c.choice.score),
            c.choice.fallback.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Tier membership, lowest-risk tier first.
pub fn write_tiers(path: &Path, front: &[FrontRecord], tiers: &[Vec<usize>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["tier", "index", "bits", "emv", "risk"])?;
    for (t, members) in tiers.iter().enumerate() {
        for &i in members {
            let r = &front[i];
            w.write_record([(t + 1).to_string(), i.to_string(), r.bit_string(), fixed(r.emv), fixed(r.risk)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_rejections(path: &Path, rejected: &[RowRejection]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["file", "line", "id", "reason"])?;
    for r in rejected {
        w.write_record([r.path.display().to_string(), r.line.to_string(), r.id.clone(), r.reason.clone()])?;
    }
    w.flush()?;
    Ok(())
}
