//! Transformed-section mechanics of a partially bonded slab on base, and
//! the Coulomb contact parameters of the slab-base interface.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Layered rigid pavement: PCC slab, unbound base, subgrade. SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PavementSection {
    pub h_s: f64,
    pub h_b: f64,
    pub e_slab: f64,
    pub e_base: f64,
    pub e_subgrade: f64,
    pub nu_slab: f64,
    pub nu_base: f64,
    pub nu_subgrade: f64,
    /// slab-base bond ratio, 0 (frictionless) to 1 (fully bonded)
    pub delta: f64,
}

impl PavementSection {
    pub fn validate(&self) -> Result<()> {
        let positive = [self.h_s, self.h_b, self.e_slab, self.e_base, self.e_subgrade];
        if positive.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::Validation(format!("thicknesses and moduli must be positive: {self:?}")));
        }
        for nu in [self.nu_slab, self.nu_base, self.nu_subgrade] {
            if !(0.0..0.5).contains(&nu) {
                return Err(Error::Validation(format!("Poisson ratio {nu} outside [0, 0.5)")));
            }
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::Validation(format!("bond ratio {} outside [0, 1]", self.delta)));
        }
        Ok(())
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_base_modulus(mut self, e_base: f64) -> Self {
        self.e_base = e_base;
        self
    }
}

/// Section properties per unit width (b = 1 m).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformedSection {
    pub i_slab: f64,
    /// base inertia in slab-modulus units (`n * h_b^3 / 12`)
    pub i_base: f64,
    pub i_tr: f64,
    /// depth of the composite neutral axis below the slab top
    pub z_bar: f64,
    pub h_eq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactParams {
    /// friction coefficient; `None` when the interface is unbonded
    pub mu: Option<f64>,
    pub n_pressure: f64,
    pub tau_max: f64,
    pub k_l: f64,
    pub f_slip: f64,
}

/// Equivalent single-slab section of the slab and base.
///
/// The base is transformed by the modular ratio `n = E_b/E_s`. The neutral
/// axis is that of the full composite; `delta` scales only the coupling term
/// `sum A_i d_i^2`.
pub fn transformed_section(sec: &PavementSection) -> Result<TransformedSection> {
    sec.validate()?;
    let n = sec.e_base / sec.e_slab;
    let a_s = sec.h_s;
    let a_b = n * sec.h_b;
    let y_s = sec.h_s / 2.0;
    let y_b = sec.h_s + sec.h_b / 2.0;
    let z_bar = (a_s * y_s + a_b * y_b) / (a_s + a_b);
    let i_slab = sec.h_s.powi(3) / 12.0;
    let i_base = n * sec.h_b.powi(3) / 12.0;
    let coupling = a_s * (y_s - z_bar).powi(2) + a_b * (y_b - z_bar).powi(2);
    let i_tr = i_slab + i_base + sec.delta * coupling;
    let h_eq = (12.0 * i_tr * (1.0 - sec.nu_slab * sec.nu_slab)).cbrt();
    Ok(TransformedSection { i_slab, i_base, i_tr, z_bar, h_eq })
}

/// Vertical pressure on the interface at radial distance `a` from a point load.
pub fn contact_pressure(p: f64, h_s: f64, a: f64) -> Result<f64> {
    if !(h_s > 0.0) {
        return Err(Error::Geometry(format!("slab thickness must be positive, got {h_s}")));
    }
    Ok(3.0 * p * h_s.powi(3) / (2.0 * PI * (h_s * h_s + a * a).powf(2.5)))
}

/// Limiting interface shear stress.
pub fn interface_shear_capacity(
    p: f64,
    h_s: f64,
    h_b: f64,
    a: f64,
    z_bar: f64,
    delta: f64,
) -> Result<f64> {
    if !(h_s > 0.0 && h_b > 0.0) {
        return Err(Error::Geometry("layer thicknesses must be positive".into()));
    }
    if !(z_bar > h_s / 2.0 && z_bar < h_s + h_b / 2.0) {
        return Err(Error::Geometry(format!(
            "neutral axis {z_bar} must lie strictly between {} and {}",
            h_s / 2.0,
            h_s + h_b / 2.0
        )));
    }
    let r2 = h_s * h_s + a * a;
    let kernel = a * h_s * h_s / r2.powf(2.5);
    let lever = h_b * (h_s + h_b / 2.0 - z_bar) / (h_s * (z_bar - h_s / 2.0));
    Ok(delta * 3.0 * p / (2.0 * PI) * kernel * lever)
}

/// Interface shear stiffness from the base shear modulus.
pub fn interface_shear_stiffness(e_base: f64, nu_base: f64, h_b: f64) -> Result<f64> {
    if !(nu_base > 0.0) {
        return Err(Error::Parameter("base Poisson ratio must be positive for k_l".into()));
    }
    let g = e_base / (2.0 * (1.0 + nu_base));
    let l = (4.0 * h_b.powi(3) * nu_base / PI).cbrt();
    Ok(PI * g / (l * nu_base))
}

/// Friction coefficient, limiting shear, shear stiffness and elastic slip.
pub fn contact_params(sec: &PavementSection, p: f64, a: f64) -> Result<ContactParams> {
    let ts = transformed_section(sec)?;
    let n_pressure = contact_pressure(p, sec.h_s, a)?;
    let tau_max = interface_shear_capacity(p, sec.h_s, sec.h_b, a, ts.z_bar, sec.delta)?;
    let k_l = interface_shear_stiffness(sec.e_base, sec.nu_base, sec.h_b)?;
    let mu = if tau_max > 0.0 { Some(n_pressure / tau_max) } else { None };
    Ok(ContactParams { mu, n_pressure, tau_max, k_l, f_slip: tau_max / k_l })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sec(delta: f64, e_base: f64, h_b: f64) -> PavementSection {
        PavementSection {
            h_s: 0.25,
            h_b,
            e_slab: 30e9,
            e_base,
            e_subgrade: 100e6,
            nu_slab: 0.15,
            nu_base: 0.35,
            nu_subgrade: 0.4,
            delta,
        }
    }

    #[test]
    fn unbonded_equal_moduli() {
        let t = transformed_section(&sec(0.0, 30e9, 0.15)).unwrap();
        let want = (0.25f64.powi(3) + 0.15f64.powi(3)) / 12.0;
        assert!((t.i_tr - want).abs() < 1e-15);
        let h = (0.25f64.powi(3) + 0.15f64.powi(3)).cbrt() * (1.0 - 0.0225f64).cbrt();
        assert!((t.h_eq - h).abs() < 1e-12);
    }

    #[test]
    fn thin_base_limit() {
        let t = transformed_section(&sec(1.0, 30e9, 1e-7)).unwrap();
        assert!((t.h_eq - 0.25 * (1.0 - 0.0225f64).cbrt()).abs() < 1e-6);
    }

    #[test]
    fn pressure_under_load() {
        let n0 = contact_pressure(40_000.0, 0.25, 0.0).unwrap();
        assert!((n0 - 3.0 * 40_000.0 / (2.0 * PI * 0.0625)).abs() < 1e-9);
        assert!(contact_pressure(40_000.0, 0.25, 1e6).unwrap() < 1e-12);
    }

    #[test]
    fn shear_capacity_is_linear_in_delta() {
        let t0 = interface_shear_capacity(4e4, 0.25, 0.15, 0.15, 0.2, 0.0).unwrap();
        assert_eq!(t0, 0.0);
        let t1 = interface_shear_capacity(4e4, 0.25, 0.15, 0.15, 0.2, 0.3).unwrap();
        let t2 = interface_shear_capacity(4e4, 0.25, 0.15, 0.15, 0.2, 0.6).unwrap();
        assert!((t2 - 2.0 * t1).abs() < 1e-12 * t2);
    }

    #[test]
    fn shear_capacity_rejects_singular_axis() {
        assert!(interface_shear_capacity(4e4, 0.25, 0.15, 0.15, 0.125, 1.0).is_err());
    }

    #[test]
    fn unbonded_contact_has_no_friction_coefficient() {
        let c = contact_params(&sec(0.0, 200e6, 0.15), 4e4, 0.15).unwrap();
        assert!(c.mu.is_none());
        assert_eq!(c.f_slip, 0.0);
    }

    #[test]
    fn zero_base_poisson_is_rejected() {
        let mut s = sec(0.5, 200e6, 0.15);
        s.nu_base = 0.0;
        assert!(contact_params(&s, 4e4, 0.15).is_err());
    }
}
