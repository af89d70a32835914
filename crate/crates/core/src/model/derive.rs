//! Plan targets derived from random well-feasible portfolios, for datasets
//! that publish only the well total.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::constraints::{evaluate_constraints, PlanTargets, RegionQuota};
use super::project::{Project, ProjectKind};
use crate::error::{Error, Result};
use crate::rng;
use crate::uncertainty::simulate::quantile_sorted;

/// Settings for [`derive_targets`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeriveSettings {
    pub tot_wells: u32,
    pub samples: usize,
    pub seed: u64,
    /// Fraction of sampled portfolios that must satisfy each constraint on
    /// its own.
    pub coverage: f64,
    pub thre_well: f64,
}

impl Default for DeriveSettings {
    fn default() -> Self {
        Self {
            tot_wells: 19,
            samples: 5000,
            seed: 2023,
            coverage: 0.6,
            thre_well: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedTargets {
    pub targets: PlanTargets,
    /// Share of the sampled portfolios that satisfy every constraint.
    pub joint_feasible_fraction: f64,
}

/// Mandatory projects, then drilling projects in random order while they
/// fit the remaining well budget, then each reserve-providing project with
/// probability one half.
pub fn random_well_portfolio<R: Rng + ?Sized>(projects: &[Project], tot_wells: u32, rng: &mut R) -> Vec<bool> {
    let mut bits: Vec<bool> = projects.iter().map(|p| p.mandatory).collect();
    let used: u64 = projects.iter().filter(|p| p.mandatory).map(|p| p.well_count as u64).sum();
    let mut remaining = (tot_wells as u64).saturating_sub(used);
    let mut order: Vec<usize> = (0..projects.len())
        .filter(|&i| !projects[i].mandatory && projects[i].well_count >= 1)
        .collect();
    order.shuffle(rng);
    for i in order {
        if remaining == 0 {
            break;
        }
        let w = projects[i].well_count as u64;
        if w <= remaining {
            bits[i] = true;
            remaining -= w;
        }
    }
    for (i, p) in projects.iter().enumerate() {
        if !p.mandatory && p.well_count == 0 {
            bits[i] = rng.random_bool(0.5);
        }
    }
    bits
}

/// Sets every floor, budget, cap and quota so that `coverage` of random
/// well-feasible portfolios satisfy it individually.
pub fn derive_targets(projects: &[Project], settings: &DeriveSettings) -> Result<DerivedTargets> {
    if settings.samples < 10 {
        return Err(Error::config("target derivation needs at least 10 samples"));
    }
    if !(settings.coverage > 0.0 && settings.coverage < 1.0) {
        return Err(Error::config("coverage must lie in (0, 1)"));
    }
    let mut stream = rng::substream(settings.seed, &[0xde1]);
    let portfolios: Vec<Vec<bool>> = (0..settings.samples)
        .map(|_| random_well_portfolio(projects, settings.tot_wells, &mut stream))
        .filter(|bits| {
            let w: u64 = bits.iter().zip(projects).filter(|(b, _)| **b).map(|(_, p)| p.well_count as u64).sum();
            w == settings.tot_wells as u64
        })
        .collect();
    if portfolios.is_empty() {
        return Err(Error::config("no random portfolio meets the well total"));
    }

    let lower_q = 1.0 - settings.coverage;
    let upper_q = settings.coverage;
    let stat = |f: &dyn Fn(&[bool]) -> f64, q: f64| {
        let mut xs: Vec<f64> = portfolios.iter().map(|b| f(b)).collect();
        xs.sort_by(f64::total_cmp);
        quantile_sorted(&xs, q)
    };
    let sum_of = |field: fn(&Project) -> f64| {
        move |bits: &[bool]| -> f64 { projects.iter().zip(bits).filter(|(_, b)| **b).map(|(p, _)| field(p)).sum() }
    };
    let cost_of = |kind: ProjectKind| {
        move |bits: &[bool]| -> f64 {
            projects.iter().zip(bits).filter(|(p, b)| **b && p.kind == kind).map(|(p, _)| p.cost).sum()
        }
    };
    let mean_pos = |bits: &[bool]| -> f64 {
        let (num, den) = projects
            .iter()
            .zip(bits)
            .filter(|(_, b)| **b)
            .fold((0.0, 0.0), |(n, d), (p, _)| (n + p.pos * p.well_count as f64, d + p.well_count as f64));
        if den > 0.0 {
            num / den
        } else {
            0.0
        }
    };
    let thre = settings.thre_well;
    let low_count =
        |bits: &[bool]| -> f64 { projects.iter().zip(bits).filter(|(p, b)| **b && p.pos < thre).count() as f64 };

    let mut region_quotas = BTreeMap::new();
    let regions: std::collections::BTreeSet<&str> = projects.iter().map(|p| p.region.as_str()).collect();
    for region in regions {
        let count = |kind: ProjectKind| {
            move |bits: &[bool]| -> f64 {
                projects.iter().zip(bits).filter(|(p, b)| **b && p.region == region && p.kind == kind).count() as f64
            }
        };
        let quota = RegionQuota {
            trap: stat(&count(ProjectKind::Trap), lower_q).floor() as u32,
            appraisal: stat(&count(ProjectKind::Appraisal), lower_q).floor() as u32,
        };
        if quota.trap + quota.appraisal > 0 {
            region_quotas.insert(region.to_string(), quota);
        }
    }

    let targets = PlanTargets {
        tot_wells: settings.tot_wells,
        pred_lb_oil: stat(&sum_of(|p| p.pred_oil), lower_q),
        pred_lb_gas: stat(&sum_of(|p| p.pred_gas), lower_q),
        cont_lb_oil: stat(&sum_of(|p| p.cont_oil), lower_q),
        cont_lb_gas: stat(&sum_of(|p| p.cont_gas), lower_q),
        prov_lb_oil: stat(&sum_of(|p| p.prov_oil), lower_q),
        prov_lb_gas: stat(&sum_of(|p| p.prov_gas), lower_q),
        drill_lb: stat(&mean_pos, lower_q),
        thre_well: thre,
        l_ub: Some(stat(&low_count, upper_q).ceil() as u32),
        cost_ub_trap: Some(stat(&cost_of(ProjectKind::Trap), upper_q)),
        cost_ub_appraisal: Some(stat(&cost_of(ProjectKind::Appraisal), upper_q)),
        region_quotas,
    };

    let feasible = portfolios
        .iter()
        .filter(|b| evaluate_constraints(b, projects, &targets).is_feasible())
        .count();
    Ok(DerivedTargets {
        targets,
        joint_feasible_fraction: feasible as f64 / portfolios.len() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Vec<Project> {
        (0..12)
            .map(|i| {
                Project::trap(&format!("T{i}"), if i % 2 == 0 { "A" } else { "B" }, 10.0 * i as f64, 1.0, 100.0 + i as f64, 500.0, 0.1 * (i % 9) as f64 + 0.1)
            })
            .chain((0..4).map(|i| {
                Project::appraisal(&format!("P{i}"), "A", (5.0, 1.0), (2.0, 0.5), 50.0, 300.0, 0.8, i % 2)
            }))
            .collect()
    }

    #[test]
    fn random_portfolios_hit_well_total() {
        let projects = toy();
        let mut r = rng::substream(1, &[]);
        for _ in 0..50 {
            let bits = random_well_portfolio(&projects, 6, &mut r);
            let w: u32 = bits.iter().zip(&projects).filter(|(b, _)| **b).map(|(_, p)| p.well_count).sum();
            assert_eq!(w, 6);
        }
    }

    #[test]
    fn derived_targets_leave_feasible_region() {
        let projects = toy();
        let d = derive_targets(&projects, &DeriveSettings { tot_wells: 6, samples: 2000, ..Default::default() }).unwrap();
        assert!(d.joint_feasible_fraction > 0.0);
        assert_eq!(d.targets.tot_wells, 6);
        assert!(d.targets.pred_lb_oil > 0.0);
    }
}
