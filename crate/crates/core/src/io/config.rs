use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::REFERENCE_MARGIN;
use crate::model::PlanTargets;
use crate::selection::SelectionMethod;
use crate::solver::SolverConfig;
use crate::uncertainty::SimulationConfig;

/// Dataset locations. Relative paths are taken from the config file's
/// directory when loading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataPaths {
    pub traps: PathBuf,
    pub appraisals: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elicitation: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub history: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub economics: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    /// Reference point = worst observed value plus this share of the range.
    pub reference_margin: f64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        Self {
            reference_margin: REFERENCE_MARGIN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectionConfig {
    pub methods: Vec<SelectionMethod>,
    pub tiers: usize,
    /// Also pick one representative per risk tier.
    pub per_tier: bool,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self {
            methods: SelectionMethod::ALL.to_vec(),
            tiers: 3,
            per_tier: false,
        }
    }
}

/// Everything one run needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub data: DataPaths,
    pub targets: PlanTargets,
    pub solver: SolverConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationConfig>,
    #[serde(default)]
    pub metrics: MetricsConfig,
    #[serde(default)]
    pub selection: SelectionConfig,
}

impl RunConfig {
    /// Parses, resolves data paths against the file's directory, checks
    /// that they exist and validates every block.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::File {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base).map_err(|e| match e {
            Error::Toml { source, .. } => Error::Toml {
                path: path.to_path_buf(),
                source,
            },
            other => other,
        })
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let raw: toml::Table = toml::from_str(text).map_err(|source| Error::Toml {
            path: PathBuf::new(),
            source,
        })?;
        let has_seed = |section: &str| {
            raw.get(section)
                .and_then(|s| s.as_table())
                .is_some_and(|t| t.contains_key("seed"))
        };
        if !has_seed("solver") {
            return Err(Error::config("[solver] must set `seed` explicitly"));
        }
        if raw.contains_key("simulation") && !has_seed("simulation") {
            return Err(Error::config("[simulation] must set `seed` explicitly"));
        }
        let mut cfg: RunConfig = raw.try_into().map_err(|source| Error::Toml {
            path: PathBuf::new(),
            source,
        })?;
        cfg.data.resolve(base);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.data.check_exist()?;
        self.targets.validate()?;
        self.solver.validate()?;
        if let Some(sim) = &self.simulation {
            if sim.samples < 2 {
                return Err(Error::config("simulation.samples must be at least 2"));
            }
            if !(sim.eps > 0.0 && sim.eps < 1.0) {
                return Err(Error::config("simulation.eps must lie in (0, 1)"));
            }
        }
        if !(self.metrics.reference_margin >= 0.0 && self.metrics.reference_margin.is_finite()) {
            return Err(Error::config("metrics.reference_margin must be finite and >= 0"));
        }
        if self.selection.tiers < 1 {
            return Err(Error::config("selection.tiers must be at least 1"));
        }
        Ok(())
    }

    /// TOML text that reloads to the same config from any directory.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::config(e.to_string()))
    }
}

impl DataPaths {
    fn resolve(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.traps);
        fix(&mut self.appraisals);
        for p in [&mut self.elicitation, &mut self.history, &mut self.economics].into_iter().flatten() {
            fix(p);
        }
    }

    fn check_exist(&self) -> Result<()> {
        let all = [Some(&self.traps), Some(&self.appraisals), self.elicitation.as_ref(), self.history.as_ref(), self.economics.as_ref()];
        for p in all.into_iter().flatten() {
            if !p.is_file() {
                return Err(Error::File {
                    path: p.clone(),
                    message: "referenced data file does not exist".into(),
                });
            }
        }
        Ok(())
    }
}
