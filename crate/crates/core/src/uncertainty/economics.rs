//! Reserve densities and the EPoS / NPV / EMV chain.

use crate::error::{Error, Result};

fn check_volumetric(phi: f64, saturation: f64, density: f64, volume_factor: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&phi) || !(0.0..=1.0).contains(&saturation) {
        return Err(Error::input("porosity and saturation must be fractions in [0, 1]"));
    }
    if !(density > 0.0) {
        return Err(Error::input("surface density must be positive"));
    }
    if !(volume_factor > 0.0) {
        return Err(Error::input("volume factor must be positive"));
    }
    Ok(())
}

/// Oil reserve density in 10^4 t/km^2: `100 phi S_o rho_o / B_o`.
pub fn oil_reserve_density(phi: f64, s_oi: f64, rho_oi: f64, beta_oi: f64) -> Result<f64> {
    check_volumetric(phi, s_oi, rho_oi, beta_oi)?;
    Ok(100.0 * phi * s_oi * rho_oi / beta_oi)
}

/// Gas reserve density in 10^8 m^3/km^2: `0.01 phi S_g rho_g / B_g`.
pub fn gas_reserve_density(phi: f64, s_ga: f64, rho_ga: f64, beta_ga: f64) -> Result<f64> {
    check_volumetric(phi, s_ga, rho_ga, beta_ga)?;
    Ok(0.01 * phi * s_ga * rho_ga / beta_ga)
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("{name} must be a probability, got {p}")));
    }
    Ok(())
}

/// Economic probability of success: GPoS times the chance of exceeding MEFS.
pub fn epos(gpos: f64, p_mefs: f64) -> Result<f64> {
    check_probability("GPoS", gpos)?;
    check_probability("P_MEFS", p_mefs)?;
    Ok(gpos * p_mefs)
}

/// Discounted sum of yearly net cash flows, `flows[t]` at year `t`.
pub fn npv(flows: &[f64], rate: f64) -> Result<f64> {
    if !(rate > -1.0) {
        return Err(Error::input("discount rate must exceed -1"));
    }
    let factor = 1.0 / (1.0 + rate);
    let mut discount = 1.0;
    let mut total = 0.0;
    for &f in flows {
        total += f * discount;
        discount *= factor;
    }
    Ok(total)
}

/// `npv * pos - costs * (1 - pos)`.
pub fn emv(npv: f64, pos: f64, costs: f64) -> Result<f64> {
    check_probability("PoS", pos)?;
    if !(costs >= 0.0) {
        return Err(Error::input("costs must be non-negative"));
    }
    Ok(npv * pos - costs * (1.0 - pos))
}
