//! Correlated Monte Carlo of per-project GPoS, reserves, NPV and EMV.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::correlation::{
    estimate_spearman, iman_conover, nearest_psd_correlation, CorrelationMatrix, SampleMatrix,
    DEFAULT_PSD_EPS,
};
use super::economics::{emv, gas_reserve_density, oil_reserve_density};
use super::elicitation::{
    beta_posterior_update, beta_prior_from_pert, pert_mean, BetaPosterior, ThreePointEstimate,
};
use crate::error::{Error, Result};
use crate::rng;

/// The five geological sub-factors whose product is GPoS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Source,
    Reservoir,
    Preservation,
    Seal,
    Migration,
}

impl Factor {
    pub const ALL: [Factor; 5] = [
        Factor::Source,
        Factor::Reservoir,
        Factor::Preservation,
        Factor::Seal,
        Factor::Migration,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::Source => "source",
            Factor::Reservoir => "reservoir",
            Factor::Preservation => "preservation",
            Factor::Seal => "seal",
            Factor::Migration => "migration",
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Factor::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::input(format!("unknown geological factor `{s}`")))
    }
}

/// One expert elicitation of one factor for one project.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorElicitation {
    pub project_id: String,
    pub factor: Factor,
    pub estimate: ThreePointEstimate,
    /// Prior concentration.
    pub k: f64,
    pub successes: u64,
    pub failures: u64,
}

impl FactorElicitation {
    /// Posterior over the factor probability, or `None` for a point mass.
    pub fn posterior(&self) -> Result<Option<BetaPosterior>> {
        if self.estimate.is_degenerate() {
            return Ok(None);
        }
        let prior = beta_prior_from_pert(pert_mean(&self.estimate), self.k).map_err(|e| Error::Project {
            project: self.project_id.clone(),
            message: format!("{}: {e}", self.factor),
        })?;
        Ok(Some(beta_posterior_update(prior, self.successes, self.failures)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fluid {
    Oil,
    Gas,
}

/// Volumetric and economic inputs for one project.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectEconomics {
    pub project_id: String,
    pub fluid: Fluid,
    pub area_km2: f64,
    pub porosity: ThreePointEstimate,
    pub saturation: ThreePointEstimate,
    pub density: f64,
    pub volume_factor: f64,
    /// Elicited NPV, 10^4 CNY.
    pub npv: ThreePointEstimate,
    /// Drilling cost, 10^4 CNY.
    pub cost: f64,
    pub p_mefs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub samples: usize,
    pub eps: f64,
    pub seed: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            samples: 10_000,
            eps: DEFAULT_PSD_EPS,
            seed: 2023,
        }
    }
}

/// Moments and exceedance quantiles of a simulated quantity.
///
/// `p90` is the value exceeded with 90% probability (the 10th percentile).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub mean: f64,
    pub stddev: f64,
    pub p90: f64,
    pub p50: f64,
    pub p10: f64,
}

impl SimulationSummary {
    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::input("summary needs at least two samples"));
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        let mut sorted = xs.to_vec();
        sorted.sort_by(f64::total_cmp);
        Ok(Self {
            mean,
            stddev: var.sqrt(),
            p90: quantile_sorted(&sorted, 0.1),
            p50: quantile_sorted(&sorted, 0.5),
            p10: quantile_sorted(&sorted, 0.9),
        })
    }

    /// Arithmetic mean, reported as Pmean.
    pub fn pmean(&self) -> f64 {
        self.mean
    }
}

/// Linear-interpolation quantile of an ascending slice.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-sample product of the factor columns and its summary.
pub fn combine_gpos(x_corr: &SampleMatrix) -> Result<(Vec<f64>, SimulationSummary)> {
    let n = x_corr.nrows();
    let mut pg = vec![1.0; n];
    for col in x_corr.columns() {
        for (p, &v) in pg.iter_mut().zip(col) {
            *p *= v;
        }
    }
    let summary = SimulationSummary::from_samples(&pg)?;
    Ok((pg, summary))
}

/// Simulation output for one project.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectSimulation {
    pub project_id: String,
    pub gpos: SimulationSummary,
    /// Mean of `p_g * P_MEFS`.
    pub epos: f64,
    pub reserves: Option<SimulationSummary>,
    pub npv: Option<f64>,
    pub emv: Option<f64>,
}

/// Runs the full uncertainty pipeline for every project in `elicitations`.
///
/// Each factor is sampled from its Beta posterior (or held constant when the
/// elicitation is a point mass), rank-correlated with Iman–Conover towards the
/// PSD-repaired Spearman matrix of `history` (identity when absent) and
/// multiplied into GPoS. Projects listed in `economics` additionally get
/// reserve, NPV and EMV figures. Results follow the order of first
/// appearance in `elicitations` and depend only on `config.seed`.
pub fn simulate_prospects(
    elicitations: &[FactorElicitation],
    history: Option<&SampleMatrix>,
    economics: &[ProjectEconomics],
    config: &SimulationConfig,
) -> Result<Vec<ProjectSimulation>> {
    if config.samples < 2 {
        return Err(Error::config("simulation needs at least two samples"));
    }
    let target = match history {
        Some(h) => {
            if h.ncols() != Factor::ALL.len() {
                return Err(Error::input(format!(
                    "history must have {} factor columns, got {}",
                    Factor::ALL.len(),
                    h.ncols()
                )));
            }
            nearest_psd_correlation(&estimate_spearman(h)?, config.eps)?
        }
        None => CorrelationMatrix::identity(Factor::ALL.len()),
    };

    let mut order: Vec<String> = Vec::new();
    let mut by_project: BTreeMap<&str, [Option<&FactorElicitation>; 5]> = BTreeMap::new();
    for e in elicitations {
        let slot = by_project.entry(e.project_id.as_str()).or_insert_with(|| {
            order.push(e.project_id.clone());
            [None; 5]
        });
        if slot[e.factor.index()].replace(e).is_some() {
            return Err(Error::Project {
                project: e.project_id.clone(),
                message: format!("duplicate elicitation for factor `{}`", e.factor),
            });
        }
    }
    let econ: BTreeMap<&str, &ProjectEconomics> =
        economics.iter().map(|e| (e.project_id.as_str(), e)).collect();

    order
        .par_iter()
        .enumerate()
        .map(|(idx, id)| {
            let factors = &by_project[id.as_str()];
            simulate_one(idx as u64, id, factors, econ.get(id.as_str()).copied(), &target, config)
        })
        .collect()
}

fn simulate_one(
    idx: u64,
    id: &str,
    factors: &[Option<&FactorElicitation>; 5],
    econ: Option<&ProjectEconomics>,
    target: &CorrelationMatrix,
    config: &SimulationConfig,
) -> Result<ProjectSimulation> {
    let n = config.samples;
    let mut columns = Vec::with_capacity(5);
    for factor in Factor::ALL {
        let e = factors[factor.index()].ok_or_else(|| Error::Project {
            project: id.to_string(),
            message: format!("missing elicitation for factor `{factor}`"),
        })?;
        let mut stream = rng::substream(config.seed, &[idx, factor.index() as u64]);
        let col = match e.posterior()? {
            Some(post) => post.sample_n(n, &mut stream),
            None => vec![e.estimate.min; n],
        };
        columns.push(col);
    }
    let independent = SampleMatrix::from_columns(columns)?;
    let correlated = iman_conover(&independent, target, config.seed ^ idx.wrapping_mul(0x9E37))?;
    let (pg, gpos) = combine_gpos(&correlated)?;

    let Some(econ) = econ else {
        return Ok(ProjectSimulation {
            project_id: id.to_string(),
            gpos,
            epos: gpos.mean,
            reserves: None,
            npv: None,
            emv: None,
        });
    };

    let mut stream = rng::substream(config.seed, &[idx, 0xec0]);
    let mut reserves = Vec::with_capacity(n);
    let mut npvs = Vec::with_capacity(n);
    let mut emvs = Vec::with_capacity(n);
    let project_err = |e: Error| Error::Project {
        project: id.to_string(),
        message: e.to_string(),
    };
    for &p in &pg {
        let phi = econ.porosity.sample(&mut stream);
        let sat = econ.saturation.sample(&mut stream);
        let density = match econ.fluid {
            Fluid::Oil => oil_reserve_density(phi, sat, econ.density, econ.volume_factor),
            Fluid::Gas => gas_reserve_density(phi, sat, econ.density, econ.volume_factor),
        }
        .map_err(project_err)?;
        reserves.push(econ.area_km2 * density);
        let v = econ.npv.sample(&mut stream);
        npvs.push(v);
        emvs.push(emv(v, p * econ.p_mefs, econ.cost).map_err(project_err)?);
    }
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    Ok(ProjectSimulation {
        project_id: id.to_string(),
        gpos,
        epos: gpos.mean * econ.p_mefs,
        reserves: Some(SimulationSummary::from_samples(&reserves)?),
        npv: Some(mean(&npvs)),
        emv: Some(mean(&emvs)),
    })
}
