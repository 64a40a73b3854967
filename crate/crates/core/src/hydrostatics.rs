//! Fredlund-Xing soil-water characteristic curve and the equilibrium
//! suction-depth profile of the base layer.
//!
//! Suction heads are in cm of water. Conversion to kPa happens only when a
//! [`MoistureState`] is built.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::cm_to_kpa;

/// Suction (cm of water) at which every soil reaches zero water content.
pub const H_MAX_CM: f64 = 1.021e7;

/// Saturation at or above which the saturation factor switches to `1/theta`.
pub const SATURATION_THRESHOLD: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwccParams {
    /// cm of water
    pub a_f: f64,
    pub b_f: f64,
    pub c_f: f64,
    /// cm of water
    pub h_r: f64,
    pub theta_sat: f64,
}

impl SwccParams {
    pub fn validate(&self) -> Result<()> {
        let ok = self.a_f > 0.0
            && self.b_f > 0.0
            && self.c_f > 0.0
            && self.h_r > 0.0
            && self.theta_sat > 0.0
            && self.theta_sat < 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!("invalid SWCC parameters {self:?}")))
        }
    }
}

/// Hydrostatic suction profile anchored at the moisture-active-zone depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuctionProfile {
    /// elevation, cm
    pub z_ref: f64,
    /// signed pressure head at `z_ref`, cm (negative is suction)
    pub h_ref: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoistureState {
    pub theta: f64,
    pub saturation: f64,
    pub suction_kpa: f64,
    pub f: f64,
}

impl MoistureState {
    /// Checks the state-level bounds, including `1 <= f <= 1/theta`.
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::Validation(format!("theta {} outside [0, 1]", self.theta)));
        }
        if !(0.0..=1.0).contains(&self.saturation) {
            return Err(Error::Validation(format!("saturation {} outside [0, 1]", self.saturation)));
        }
        if self.suction_kpa < 0.0 {
            return Err(Error::Validation(format!("negative suction {}", self.suction_kpa)));
        }
        let f_max = if self.theta > 0.0 { 1.0 / self.theta } else { f64::INFINITY };
        if self.f < 1.0 || self.f > f_max * (1.0 + 1e-12) {
            return Err(Error::Validation(format!(
                "saturation factor {} outside [1, 1/theta = {}]",
                self.f, f_max
            )));
        }
        Ok(())
    }
}

/// Correction factor C(h).
pub fn swcc_correction(h: f64, h_r: f64) -> Result<f64> {
    if !(h_r > 0.0) {
        return Err(Error::Parameter(format!("h_r must be positive, got {h_r}")));
    }
    if !(h >= 0.0) {
        return Err(Error::Domain(format!("suction head must be nonnegative, got {h}")));
    }
    Ok(1.0 - (h / h_r).ln_1p() / (H_MAX_CM / h_r).ln_1p())
}

/// Degree of saturation at suction head `h` (cm).
pub fn swcc_saturation(h: f64, p: &SwccParams) -> Result<f64> {
    p.validate()?;
    let c = swcc_correction(h, p.h_r)?;
    let base = (std::f64::consts::E + (h / p.a_f).powf(p.b_f)).ln();
    Ok((c / base.powf(p.c_f)).clamp(0.0, 1.0))
}

/// Signed pressure head at elevation `z` on the 1:1 equilibrium profile.
pub fn suction_at_elevation(profile: &SuctionProfile, z: f64) -> f64 {
    profile.h_ref - (z - profile.z_ref)
}

/// Moisture state at suction head `h` (cm).
pub fn moisture_state(p: &SwccParams, h: f64) -> Result<MoistureState> {
    let saturation = swcc_saturation(h, p)?;
    let theta = saturation * p.theta_sat;
    let f = if saturation >= SATURATION_THRESHOLD {
        if theta <= 0.0 {
            return Err(Error::Degenerate("theta = 0 at full saturation".into()));
        }
        1.0 / theta
    } else {
        1.0
    };
    Ok(MoistureState { theta, saturation, suction_kpa: cm_to_kpa(h), f })
}

/// Suction head (cm) at which the SWCC reaches `target_s`, by bisection.
pub fn invert_swcc(target_s: f64, p: &SwccParams) -> Result<f64> {
    p.validate()?;
    if !(target_s > 0.0 && target_s <= 1.0) {
        return Err(Error::NoRoot { target: target_s, lo: 0.0 });
    }
    if target_s == 1.0 {
        return Ok(0.0);
    }
    let s_min = swcc_saturation(H_MAX_CM, p)?;
    if target_s < s_min {
        return Err(Error::NoRoot { target: target_s, lo: s_min });
    }
    // Bisect on h until the bracket collapses; log-space midpoints above 1 cm
    // keep relative precision across seven decades of suction.
    let (mut lo, mut hi) = (0.0_f64, H_MAX_CM);
    for _ in 0..2000 {
        let mid = if lo > 1.0 { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        if mid <= lo || mid >= hi {
            break;
        }
        if swcc_saturation(mid, p)? > target_s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s_lo = swcc_saturation(lo, p)?;
    let s_hi = swcc_saturation(hi, p)?;
    let (h, resid) = if (s_lo - target_s).abs() <= (s_hi - target_s).abs() {
        (lo, (s_lo - target_s).abs())
    } else {
        (hi, (s_hi - target_s).abs())
    };
    if resid <= 1e-8 {
        Ok(h)
    } else {
        Err(Error::Solver { msg: "SWCC bisection".into(), residual: resid })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p27() -> SwccParams {
        SwccParams { a_f: 4.91, b_f: 2.62, c_f: 1.65, h_r: 300.0, theta_sat: 0.174 }
    }

    #[test]
    fn correction_endpoints() {
        assert_eq!(swcc_correction(0.0, 300.0).unwrap(), 1.0);
        assert!(swcc_correction(H_MAX_CM, 300.0).unwrap().abs() < 1e-15);
        assert!(swcc_correction(1.0, 0.0).is_err());
    }

    #[test]
    fn saturation_at_zero_head_is_one() {
        assert_eq!(swcc_saturation(0.0, &p27()).unwrap(), 1.0);
    }

    #[test]
    fn saturated_state_uses_inverse_theta() {
        let m = moisture_state(&p27(), 0.0).unwrap();
        assert_eq!(m.saturation, 1.0);
        assert_eq!(m.theta, 0.174);
        assert!((m.f - 1.0 / 0.174).abs() < 1e-12);
    }

    #[test]
    fn invert_full_saturation_is_zero() {
        assert_eq!(invert_swcc(1.0, &p27()).unwrap(), 0.0);
    }

    #[test]
    fn invert_below_range_fails() {
        assert!(matches!(invert_swcc(0.0, &p27()), Err(Error::NoRoot { .. })));
        assert!(matches!(invert_swcc(-0.1, &p27()), Err(Error::NoRoot { .. })));
    }

    #[test]
    fn profile_slope() {
        let p = SuctionProfile { z_ref: 0.0, h_ref: -1000.0 };
        assert_eq!(suction_at_elevation(&p, 0.0), -1000.0);
        assert_eq!(suction_at_elevation(&p, 50.0), -1050.0);
        assert_eq!(suction_at_elevation(&p, -200.0), -800.0);
    }
}
