use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::constraints::{evaluate_constraints, ConstraintReport, PlanTargets};
use super::objectives::{objective_emv, objective_risk};
use super::project::{Project, ProjectKind};
use crate::error::{Error, Result};

/// Objective values and constraint outcome of one selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub emv: f64,
    pub risk: f64,
    pub report: ConstraintReport,
}

impl Evaluation {
    pub fn is_feasible(&self) -> bool {
        self.report.is_feasible()
    }

    pub fn violation(&self) -> f64 {
        self.report.total_violation()
    }

    /// `(-emv, risk)`, both minimised.
    pub fn canonical(&self) -> [f64; 2] {
        [-self.emv, self.risk]
    }
}

/// A candidate portfolio: one bit per project, trap projects first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Chromosome {
    pub bits: Vec<bool>,
    #[serde(skip)]
    pub eval: Option<Evaluation>,
    /// The last well-count repair could not reach the target.
    #[serde(skip)]
    pub repair_failed: bool,
}

impl Chromosome {
    pub fn new(bits: Vec<bool>) -> Self {
        Self {
            bits,
            eval: None,
            repair_failed: false,
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn evaluation(&self) -> &Evaluation {
        self.eval.as_ref().expect("chromosome has not been evaluated")
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::input(format!("invalid bit `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(Self::new)
    }
}

/// Projects and targets with the per-locus data the operators read.
#[derive(Debug, Clone)]
pub struct Instance {
    projects: Vec<Project>,
    targets: PlanTargets,
    returns: Vec<f64>,
    wells: Vec<u32>,
    mandatory: Vec<bool>,
    groups: Vec<usize>,
    group_quota: Vec<u32>,
}

impl Instance {
    /// Validates the projects and checks the mandatory set fits the well
    /// target. Projects are reordered traps first, keeping relative order.
    pub fn new(mut projects: Vec<Project>, targets: PlanTargets) -> Result<Self> {
        if projects.is_empty() {
            return Err(Error::config("no candidate projects"));
        }
        targets.validate()?;
        for p in &projects {
            p.validate()?;
        }
        projects.sort_by_key(|p| p.kind == ProjectKind::Appraisal);

        let mandatory_wells: u64 = projects.iter().filter(|p| p.mandatory).map(|p| p.well_count as u64).sum();
        if mandatory_wells > targets.tot_wells as u64 {
            return Err(Error::config(format!(
                "mandatory projects need {mandatory_wells} wells but tot_wells is {}",
                targets.tot_wells
            )));
        }
        let capacity: u64 = projects.iter().map(|p| p.well_count as u64).sum();
        if capacity < targets.tot_wells as u64 {
            return Err(Error::config(format!(
                "all candidates together provide {capacity} wells, fewer than tot_wells = {}",
                targets.tot_wells
            )));
        }

        let mut group_ids: BTreeMap<(String, ProjectKind), usize> = BTreeMap::new();
        let mut group_quota = Vec::new();
        let groups = projects
            .iter()
            .map(|p| {
                *group_ids.entry((p.region.clone(), p.kind)).or_insert_with(|| {
                    let q = targets.region_quotas.get(&p.region).map(|q| q.for_kind(p.kind)).unwrap_or(0);
                    group_quota.push(q);
                    group_quota.len() - 1
                })
            })
            .collect();

        Ok(Self {
            returns: projects.iter().map(Project::expected_return).collect(),
            wells: projects.iter().map(|p| p.well_count).collect(),
            mandatory: projects.iter().map(|p| p.mandatory).collect(),
            groups,
            group_quota,
            projects,
            targets,
        })
    }

    pub fn len(&self) -> usize {
        self.projects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projects.is_empty()
    }

    pub fn projects(&self) -> &[Project] {
        &self.projects
    }

    pub fn targets(&self) -> &PlanTargets {
        &self.targets
    }

    /// Expected return `npv * pos` per locus.
    pub fn returns(&self) -> &[f64] {
        &self.returns
    }

    pub fn wells(&self) -> &[u32] {
        &self.wells
    }

    pub fn mandatory(&self) -> &[bool] {
        &self.mandatory
    }

    /// Region-and-kind group of each locus.
    pub fn groups(&self) -> &[usize] {
        &self.groups
    }

    pub fn group_quota(&self) -> &[u32] {
        &self.group_quota
    }

    pub fn well_target(&self) -> u32 {
        self.targets.tot_wells
    }

    pub fn well_sum(&self, bits: &[bool]) -> i64 {
        bits.iter().zip(&self.wells).filter(|(b, _)| **b).map(|(_, w)| *w as i64).sum()
    }

    pub fn enforce_mandatory(&self, bits: &mut [bool]) {
        for (b, m) in bits.iter_mut().zip(&self.mandatory) {
            if *m {
                *b = true;
            }
        }
    }

    pub fn evaluate_bits(&self, bits: &[bool]) -> Evaluation {
        Evaluation {
            emv: objective_emv(bits, &self.projects),
            risk: objective_risk(bits, &self.projects),
            report: evaluate_constraints(bits, &self.projects, &self.targets),
        }
    }

    pub fn evaluate(&self, c: &mut Chromosome) {
        if c.eval.is_none() {
            c.eval = Some(self.evaluate_bits(&c.bits));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traps_first_and_groups() {
        let projects = vec![
            Project::appraisal("P", "A", (1.0, 0.0), (0.0, 0.0), 0.0, 10.0, 0.9, 1),
            Project::trap("T", "A", 1.0, 0.0, 1.0, 10.0, 0.5),
            Project::trap("U", "B", 1.0, 0.0, 1.0, 10.0, 0.5),
        ];
        let inst = Instance::new(projects, PlanTargets::wells_only(2)).unwrap();
        let ids: Vec<&str> = inst.projects().iter().map(|p| p.id.as_str()).collect();
        assert_eq!(ids, ["T", "U", "P"]);
        assert_eq!(inst.groups(), &[0, 1, 2]);
    }

    #[test]
    fn mandatory_overflow_is_config_error() {
        let projects = vec![
            Project::trap("T", "A", 1.0, 0.0, 1.0, 10.0, 0.5).with_mandatory(true),
            Project::trap("U", "A", 1.0, 0.0, 1.0, 10.0, 0.5).with_mandatory(true),
        ];
        let err = Instance::new(projects, PlanTargets::wells_only(1)).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn bit_string_round_trip() {
        let c = Chromosome::new(vec![true, false, true]);
        assert_eq!(c.bit_string(), "101");
        assert_eq!(Chromosome::from_bit_string("101").unwrap().bits, c.bits);
        assert!(Chromosome::from_bit_string("12").is_err());
    }
}
