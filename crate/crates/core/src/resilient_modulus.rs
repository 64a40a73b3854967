//! Resilient-modulus models for unbound base material: the NCHRP 1-28A
//! stress model, the Pavement ME moisture ratio and the suction model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrostatics::MoistureState;

pub const P_ATM_KPA: f64 = 101.325;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MrCoefficients {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

/// Stresses in kPa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressState {
    pub i1: f64,
    pub tau_oct: f64,
    pub p_a: f64,
}

impl Default for StressState {
    /// Evaluation stress state used for the sensitivity studies.
    fn default() -> Self {
        StressState { i1: 208.0, tau_oct: 48.6, p_a: P_ATM_KPA }
    }
}

impl StressState {
    fn validate(&self) -> Result<()> {
        if !(self.p_a > 0.0) || !(self.tau_oct >= 0.0) {
            return Err(Error::Parameter(format!("invalid stress state {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeMoistureParams {
    pub a: f64,
    pub b: f64,
    pub k_m: f64,
    pub s_opt: f64,
    /// kPa
    pub mr_opt: f64,
}

/// Options for the suction model.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SuctionModelOptions {
    /// Use `(tau/p_a + 1)` in the shear term, as the stress model does.
    pub shear_plus_one: bool,
}

fn check_coeffs(c: &MrCoefficients) -> Result<()> {
    if !(c.k1 > 0.0) {
        return Err(Error::Parameter(format!("k1 must be positive, got {}", c.k1)));
    }
    Ok(())
}

/// NCHRP 1-28A stress model, kPa.
pub fn mr_nchrp(c: &MrCoefficients, s: &StressState) -> Result<f64> {
    check_coeffs(c)?;
    s.validate()?;
    if !(s.i1 > 0.0) {
        return Err(Error::Domain(format!("bulk stress must be positive, got {}", s.i1)));
    }
    Ok(c.k1 * s.p_a * (s.i1 / s.p_a).powf(c.k2) * (s.tau_oct / s.p_a + 1.0).powf(c.k3))
}

/// Pavement ME moisture adjustment, kPa.
pub fn mr_me_ratio(p: &MeMoistureParams, s_now: f64) -> Result<f64> {
    if !(p.a < 0.0 && p.b > 0.0) {
        return Err(Error::Parameter(format!("need a < 0 < b, got a={} b={}", p.a, p.b)));
    }
    if !(p.mr_opt > 0.0) {
        return Err(Error::Parameter(format!("mr_opt must be positive, got {}", p.mr_opt)));
    }
    let expo = (-p.b / p.a).ln() + p.k_m * (s_now - p.s_opt);
    // exp overflow drives the sigmoid to its lower asymptote, which is the right limit.
    let log_ratio = p.a + (p.b - p.a) / (1.0 + expo.exp());
    Ok(p.mr_opt * 10f64.powf(log_ratio))
}

/// Suction / water-content model, kPa.
pub fn mr_suction(
    c: &MrCoefficients,
    s: &StressState,
    m: &MoistureState,
    opts: SuctionModelOptions,
) -> Result<f64> {
    check_coeffs(c)?;
    s.validate()?;
    let h_m = -m.suction_kpa;
    let confinement = s.i1 - 3.0 * m.theta * m.f * h_m;
    if !(confinement > 0.0) {
        return Err(Error::Domain(format!("nonpositive confinement term {confinement}")));
    }
    let shear = if opts.shear_plus_one {
        s.tau_oct / s.p_a + 1.0
    } else {
        if s.tau_oct == 0.0 && c.k3 < 0.0 {
            return Err(Error::Domain("tau_oct = 0 with k3 < 0 is singular".into()));
        }
        s.tau_oct / s.p_a
    };
    Ok(c.k1 * s.p_a * (confinement / s.p_a).powf(c.k2) * shear.powf(c.k3))
}
