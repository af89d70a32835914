use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectKind {
    /// Early-stage block evaluated by geological probability of success.
    Trap,
    /// Data-rich block evaluated by economic probability of success.
    Appraisal,
}

impl fmt::Display for ProjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectKind::Trap => f.write_str("trap"),
            ProjectKind::Appraisal => f.write_str("appraisal"),
        }
    }
}

/// One drilling candidate.
///
/// Reserves are in 10^4 t (oil) and 10^8 m^3 (gas); money in 10^4 CNY. Trap
/// projects carry the predicted reserves, appraisal projects the controlled
/// and proved ones; the unused fields are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Project {
    pub id: String,
    pub region: String,
    pub kind: ProjectKind,
    pub pred_oil: f64,
    pub pred_gas: f64,
    pub cont_oil: f64,
    pub cont_gas: f64,
    pub prov_oil: f64,
    pub prov_gas: f64,
    pub cost: f64,
    pub npv: f64,
    /// GPoS for traps, EPoS for appraisals.
    pub pos: f64,
    /// Wells to drill; 0 marks a reserve-providing appraisal.
    pub well_count: u32,
    pub mandatory: bool,
}

impl Project {
    pub fn trap(id: &str, region: &str, pred_oil: f64, pred_gas: f64, cost: f64, npv: f64, gpos: f64) -> Self {
        Self {
            id: id.into(),
            region: region.into(),
            kind: ProjectKind::Trap,
            pred_oil,
            pred_gas,
            cont_oil: 0.0,
            cont_gas: 0.0,
            prov_oil: 0.0,
            prov_gas: 0.0,
            cost,
            npv,
            pos: gpos,
            well_count: 1,
            mandatory: false,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn appraisal(
        id: &str,
        region: &str,
        cont: (f64, f64),
        prov: (f64, f64),
        cost: f64,
        npv: f64,
        epos: f64,
        well_count: u32,
    ) -> Self {
        Self {
            id: id.into(),
            region: region.into(),
            kind: ProjectKind::Appraisal,
            pred_oil: 0.0,
            pred_gas: 0.0,
            cont_oil: cont.0,
            cont_gas: cont.1,
            prov_oil: prov.0,
            prov_gas: prov.1,
            cost,
            npv,
            pos: epos,
            well_count,
            mandatory: false,
        }
    }

    pub fn with_wells(mut self, wells: u32) -> Self {
        self.well_count = wells;
        self
    }

    pub fn with_mandatory(mut self, mandatory: bool) -> Self {
        self.mandatory = mandatory;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |message: String| Error::Project {
            project: self.id.clone(),
            message,
        };
        if !(0.0..=1.0).contains(&self.pos) {
            return Err(fail(format!("probability of success {} outside [0, 1]", self.pos)));
        }
        if !(self.cost >= 0.0) {
            return Err(fail(format!("cost {} is negative", self.cost)));
        }
        let reserves = [
            self.pred_oil,
            self.pred_gas,
            self.cont_oil,
            self.cont_gas,
            self.prov_oil,
            self.prov_gas,
        ];
        if reserves.iter().any(|r| !(r.is_finite() && *r >= 0.0)) || !self.npv.is_finite() {
            return Err(fail("reserves must be finite and non-negative, NPV finite".into()));
        }
        Ok(())
    }

    /// Expected return `npv * pos`, the quantity whose dispersion is the risk.
    pub fn expected_return(&self) -> f64 {
        self.npv * self.pos
    }

    /// Contribution to the EMV objective when selected.
    ///
    /// Traps subtract the full drilling cost; appraisals subtract the NPV lost
    /// in the failure case.
    pub fn emv_contribution(&self) -> f64 {
        match self.kind {
            ProjectKind::Trap => self.npv * self.pos - self.cost,
            ProjectKind::Appraisal => self.npv * self.pos - self.npv * (1.0 - self.pos),
        }
    }
}
