use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::project::{Project, ProjectKind};

/// Minimum selected counts in one region, per project kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct RegionQuota {
    pub trap: u32,
    pub appraisal: u32,
}

impl RegionQuota {
    pub fn for_kind(&self, kind: ProjectKind) -> u32 {
        match kind {
            ProjectKind::Trap => self.trap,
            ProjectKind::Appraisal => self.appraisal,
        }
    }
}

/// Right-hand sides of every constraint family.
///
/// Budgets and the low-success cap are optional; absent means unbounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlanTargets {
    pub tot_wells: u32,
    pub pred_lb_oil: f64,
    pub pred_lb_gas: f64,
    pub cont_lb_oil: f64,
    pub cont_lb_gas: f64,
    pub prov_lb_oil: f64,
    pub prov_lb_gas: f64,
    /// Floor on the well-weighted mean probability of success.
    pub drill_lb: f64,
    /// A selected project with `pos` below this counts as low-success.
    pub thre_well: f64,
    pub l_ub: Option<u32>,
    pub cost_ub_trap: Option<f64>,
    pub cost_ub_appraisal: Option<f64>,
    pub region_quotas: BTreeMap<String, RegionQuota>,
}

impl Default for PlanTargets {
    fn default() -> Self {
        Self {
            tot_wells: 1,
            pred_lb_oil: 0.0,
            pred_lb_gas: 0.0,
            cont_lb_oil: 0.0,
            cont_lb_gas: 0.0,
            prov_lb_oil: 0.0,
            prov_lb_gas: 0.0,
            drill_lb: 0.0,
            thre_well: 0.0,
            l_ub: None,
            cost_ub_trap: None,
            cost_ub_appraisal: None,
            region_quotas: BTreeMap::new(),
        }
    }
}

impl PlanTargets {
    /// Only the well-count equality is binding.
    pub fn wells_only(tot_wells: u32) -> Self {
        Self {
            tot_wells,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        let floors = [
            self.pred_lb_oil,
            self.pred_lb_gas,
            self.cont_lb_oil,
            self.cont_lb_gas,
            self.prov_lb_oil,
            self.prov_lb_gas,
            self.drill_lb,
        ];
        if floors.iter().any(|f| !(f.is_finite() && *f >= 0.0)) {
            return Err(crate::Error::config("reserve and PoS floors must be finite and >= 0"));
        }
        if self.tot_wells < 1 {
            return Err(crate::Error::config("tot_wells must be at least 1"));
        }
        for b in [self.cost_ub_trap, self.cost_ub_appraisal].into_iter().flatten() {
            if !(b >= 0.0) {
                return Err(crate::Error::config("budgets must be >= 0"));
            }
        }
        Ok(())
    }
}

/// The twelve constraint families, `a` through `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConstraintFamily {
    WellCount,
    PredOil,
    PredGas,
    ContOil,
    ContGas,
    ProvOil,
    ProvGas,
    MeanPos,
    LowSuccess,
    TrapBudget,
    AppraisalBudget,
    RegionQuota,
}

impl ConstraintFamily {
    pub const ALL: [ConstraintFamily; 12] = [
        ConstraintFamily::WellCount,
        ConstraintFamily::PredOil,
        ConstraintFamily::PredGas,
        ConstraintFamily::ContOil,
        ConstraintFamily::ContGas,
        ConstraintFamily::ProvOil,
        ConstraintFamily::ProvGas,
        ConstraintFamily::MeanPos,
        ConstraintFamily::LowSuccess,
        ConstraintFamily::TrapBudget,
        ConstraintFamily::AppraisalBudget,
        ConstraintFamily::RegionQuota,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstraintFamily::WellCount => "well_count",
            ConstraintFamily::PredOil => "pred_oil",
            ConstraintFamily::PredGas => "pred_gas",
            ConstraintFamily::ContOil => "cont_oil",
            ConstraintFamily::ContGas => "cont_gas",
            ConstraintFamily::ProvOil => "prov_oil",
            ConstraintFamily::ProvGas => "prov_gas",
            ConstraintFamily::MeanPos => "mean_pos",
            ConstraintFamily::LowSuccess => "low_success",
            ConstraintFamily::TrapBudget => "trap_budget",
            ConstraintFamily::AppraisalBudget => "appraisal_budget",
            ConstraintFamily::RegionQuota => "region_quota",
        }
    }
}

impl fmt::Display for ConstraintFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.letter(), self.name())
    }
}

/// Outcome of one constraint family.
///
/// `slack` is signed: for the well-count equality it is `selected - target`
/// (must be exactly 0); for floors `achieved - floor`, for caps
/// `cap - achieved`, for quotas minus the total shortfall (all must be >= 0).
/// `scale` normalises the violation so families with different units can be
/// summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintEntry {
    pub family: ConstraintFamily,
    pub satisfied: bool,
    pub slack: f64,
    pub scale: f64,
}

impl ConstraintEntry {
    fn equality(family: ConstraintFamily, slack: f64, scale: f64) -> Self {
        Self {
            family,
            satisfied: slack == 0.0,
            slack,
            scale: scale.max(1.0),
        }
    }

    fn inequality(family: ConstraintFamily, slack: f64, scale: f64) -> Self {
        Self {
            family,
            satisfied: slack >= 0.0,
            slack,
            scale: scale.max(1.0),
        }
    }

    pub fn violation(&self) -> f64 {
        let raw = match self.family {
            ConstraintFamily::WellCount => self.slack.abs(),
            _ => (-self.slack).max(0.0),
        };
        raw / self.scale
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub entries: Vec<ConstraintEntry>,
}

impl ConstraintReport {
    pub fn is_feasible(&self) -> bool {
        self.entries.iter().all(|e| e.satisfied)
    }

    /// Sum of scaled violations; zero exactly when feasible.
    pub fn total_violation(&self) -> f64 {
        self.entries.iter().map(ConstraintEntry::violation).sum()
    }

    pub fn get(&self, family: ConstraintFamily) -> &ConstraintEntry {
        &self.entries[family as usize]
    }
}

/// Evaluates all constraint families for the selection `bits`.
pub fn evaluate_constraints(bits: &[bool], projects: &[Project], targets: &PlanTargets) -> ConstraintReport {
    debug_assert_eq!(bits.len(), projects.len());
    let mut wells = 0u64;
    let mut pred = (0.0, 0.0);
    let mut cont = (0.0, 0.0);
    let mut prov = (0.0, 0.0);
    let mut pos_weighted = 0.0;
    let mut low = 0u32;
    let mut cost_trap = 0.0;
    let mut cost_app = 0.0;
    let mut counts: BTreeMap<(&str, ProjectKind), u32> = BTreeMap::new();

    for (p, _) in projects.iter().zip(bits).filter(|(_, b)| **b) {
        wells += p.well_count as u64;
        pos_weighted += p.pos * p.well_count as f64;
        if p.pos < targets.thre_well {
            low += 1;
        }
        *counts.entry((p.region.as_str(), p.kind)).or_default() += 1;
        match p.kind {
            ProjectKind::Trap => {
                pred.0 += p.pred_oil;
                pred.1 += p.pred_gas;
                cost_trap += p.cost;
            }
            ProjectKind::Appraisal => {
                cont.0 += p.cont_oil;
                cont.1 += p.cont_gas;
                prov.0 += p.prov_oil;
                prov.1 += p.prov_gas;
                cost_app += p.cost;
            }
        }
    }

    let mean_pos = if wells > 0 { pos_weighted / wells as f64 } else { 0.0 };
    let shortfall: u32 = targets
        .region_quotas
        .iter()
        .map(|(region, q)| {
            let t = counts.get(&(region.as_str(), ProjectKind::Trap)).copied().unwrap_or(0);
            let a = counts.get(&(region.as_str(), ProjectKind::Appraisal)).copied().unwrap_or(0);
            q.trap.saturating_sub(t) + q.appraisal.saturating_sub(a)
        })
        .sum();
    let quota_total: u32 = targets.region_quotas.values().map(|q| q.trap + q.appraisal).sum();

    use ConstraintFamily as F;
    let floor = |family, achieved: f64, lb: f64| ConstraintEntry::inequality(family, achieved - lb, lb);
    let cap = |family, achieved: f64, ub: Option<f64>| match ub {
        Some(ub) => ConstraintEntry::inequality(family, ub - achieved, ub),
        None => ConstraintEntry::inequality(family, f64::INFINITY, 1.0),
    };
    let entries = vec![
        ConstraintEntry::equality(F::WellCount, wells as f64 - targets.tot_wells as f64, targets.tot_wells as f64),
        floor(F::PredOil, pred.0, targets.pred_lb_oil),
        floor(F::PredGas, pred.1, targets.pred_lb_gas),
        floor(F::ContOil, cont.0, targets.cont_lb_oil),
        floor(F::ContGas, cont.1, targets.cont_lb_gas),
        floor(F::ProvOil, prov.0, targets.prov_lb_oil),
        floor(F::ProvGas, prov.1, targets.prov_lb_gas),
        ConstraintEntry::inequality(F::MeanPos, mean_pos - targets.drill_lb, 1.0),
        cap(F::LowSuccess, low as f64, targets.l_ub.map(f64::from)),
        cap(F::TrapBudget, cost_trap, targets.cost_ub_trap),
        cap(F::AppraisalBudget, cost_app, targets.cost_ub_appraisal),
        ConstraintEntry::inequality(F::RegionQuota, -(shortfall as f64), quota_total as f64),
    ];
    ConstraintReport { entries }
}

pub fn is_feasible(bits: &[bool], projects: &[Project], targets: &PlanTargets) -> bool {
    evaluate_constraints(bits, projects, targets).is_feasible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConstraintFamily as F;

    fn fixture() -> (Vec<Project>, PlanTargets) {
        let projects = vec![
            Project::trap("T1", "A", 100.0, 10.0, 500.0, 2000.0, 0.6).with_mandatory(true),
            Project::trap("T2", "B", 50.0, 0.0, 300.0, 900.0, 0.2),
            Project::appraisal("P1", "A", (40.0, 5.0), (20.0, 2.0), 400.0, 1500.0, 0.8, 1).with_mandatory(true),
            Project::appraisal("P2", "B", (10.0, 0.0), (0.0, 0.0), 0.0, 300.0, 0.9, 0),
        ];
        let mut quotas = BTreeMap::new();
        quotas.insert("A".to_string(), RegionQuota { trap: 1, appraisal: 1 });
        let targets = PlanTargets {
            tot_wells: 2,
            pred_lb_oil: 80.0,
            pred_lb_gas: 5.0,
            cont_lb_oil: 30.0,
            cont_lb_gas: 5.0,
            prov_lb_oil: 10.0,
            prov_lb_gas: 1.0,
            drill_lb: 0.5,
            thre_well: 0.3,
            l_ub: Some(0),
            cost_ub_trap: Some(600.0),
            cost_ub_appraisal: Some(500.0),
            region_quotas: quotas,
        };
        (projects, targets)
    }

    #[test]
    fn empty_selection_violates_floors() {
        let (projects, mut targets) = fixture();
        targets.tot_wells = 19;
        let r = evaluate_constraints(&[false; 4], &projects, &targets);
        assert_eq!(r.get(F::WellCount).slack, -19.0);
        assert!(!r.get(F::WellCount).satisfied);
        assert_eq!(r.get(F::PredOil).slack, -80.0);
        assert_eq!(r.get(F::ContOil).slack, -30.0);
        assert_eq!(r.get(F::ProvGas).slack, -1.0);
        assert!(!r.is_feasible());
        assert!(r.total_violation() > 0.0);
    }

    #[test]
    fn well_equality_satisfied() {
        let projects: Vec<Project> = (0..25).map(|i| Project::trap(&format!("T{i}"), "A", 0.0, 0.0, 1.0, 1.0, 0.5)).collect();
        let targets = PlanTargets::wells_only(19);
        let bits: Vec<bool> = (0..25).map(|i| i < 19).collect();
        let r = evaluate_constraints(&bits, &projects, &targets);
        assert!(r.get(F::WellCount).satisfied);
        assert_eq!(r.get(F::WellCount).slack, 0.0);
        assert!(r.is_feasible());
    }

    #[test]
    fn low_success_count() {
        let projects = vec![
            Project::trap("A", "X", 0.0, 0.0, 1.0, 1.0, 0.2),
            Project::trap("B", "X", 0.0, 0.0, 1.0, 1.0, 0.8),
        ];
        let targets = PlanTargets { tot_wells: 2, thre_well: 0.3, l_ub: Some(0), ..Default::default() };
        let r = evaluate_constraints(&[true, true], &projects, &targets);
        let e = r.get(F::LowSuccess);
        assert!(!e.satisfied);
        assert_eq!(e.slack, -1.0);
    }

    #[test]
    fn fixture_mandatory_selection_feasible_then_budget_cut() {
        let (projects, mut targets) = fixture();
        let bits = [true, false, true, false];
        let r = evaluate_constraints(&bits, &projects, &targets);
        assert!(r.is_feasible(), "{r:?}");
        assert!(is_feasible(&bits, &projects, &targets));
        targets.cost_ub_trap = Some(499.0);
        assert!(!is_feasible(&bits, &projects, &targets));
    }

    #[test]
    fn quota_shortfall_and_mean_pos() {
        let (projects, targets) = fixture();
        // only T2 + P2: region A quota unmet, mean PoS 0.2 < 0.5
        let r = evaluate_constraints(&[false, true, false, true], &projects, &targets);
        assert_eq!(r.get(F::RegionQuota).slack, -2.0);
        assert!((r.get(F::MeanPos).slack - (0.2 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn evaluation_is_pure() {
        let (projects, targets) = fixture();
        let bits = [true, true, false, true];
        assert_eq!(
            evaluate_constraints(&bits, &projects, &targets),
            evaluate_constraints(&bits, &projects, &targets)
        );
    }

    #[test]
    fn family_letters() {
        assert_eq!(F::WellCount.letter(), 'a');
        assert_eq!(F::RegionQuota.letter(), 'l');
    }
}
