//! AREA-method backcalculation of the modulus of subgrade reaction from a
//! four-sensor FWD basin, and the end-to-end modified-k pipeline.
//!
//! The correlation constants are bound to inches and pounds, so the chain
//! runs in US customary units internally.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::{full_structure_basin, DeflectionBasin, ForwardModel, FwdLoad, SENSOR_OFFSETS};
use crate::hydrostatics::MoistureState;
use crate::resilient_modulus::{mr_suction, MrCoefficients, StressState, SuctionModelOptions};
use crate::slab::PavementSection;
use crate::units::{m_to_in, n_to_lbf, PA_PER_PCI};

/// Backcalculation load (lbf) the basin is scaled to.
pub const AREA_LOAD_LBF: f64 = 9000.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaConstants {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub inv_k4: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// sensor spacing, in
    pub spacing_in: f64,
}

impl Default for AreaConstants {
    fn default() -> Self {
        AreaConstants {
            k1: 36.0,
            k2: 1812.597,
            k3: 2.559,
            inv_k4: 4.387,
            a: 0.12450,
            b: 0.14707,
            c: 0.07565,
            spacing_in: 12.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KValue {
    pub basin_area_in: f64,
    pub l_e_in: f64,
    pub d_star: f64,
    pub k_pci: f64,
    pub k_pa_per_m: f64,
}

fn check_layout(basin: &DeflectionBasin) -> Result<()> {
    let ok = basin.offsets.len() == 4
        && basin.offsets.iter().zip(SENSOR_OFFSETS).all(|(a, b)| (a - b).abs() < 1e-6);
    if ok {
        Ok(())
    } else {
        Err(Error::Layout(format!("expected sensors at 0/12/24/36 in, got {:?} m", basin.offsets)))
    }
}

/// Basin area from four deflections in any consistent unit; result in inches.
pub fn basin_area(d: &[f64; 4], c: &AreaConstants) -> Result<f64> {
    if !(d[0] > 0.0) {
        return Err(Error::Input(format!("D0 must be positive, got {}", d[0])));
    }
    Ok(c.spacing_in / (2.0 * d[0]) * (d[0] + 2.0 * (d[1] + d[2]) + d[3]))
}

/// Effective relative stiffness length (in).
pub fn effective_length(ba: f64, c: &AreaConstants) -> Result<f64> {
    if !(ba < c.k1) {
        return Err(Error::SingularBasin { ba });
    }
    Ok((((c.k1 - ba) / c.k2).ln() / -c.k3).powf(c.inv_k4))
}

/// Loading-point deflection coefficient.
pub fn deflection_coefficient(l_e: f64, c: &AreaConstants) -> Result<f64> {
    if !(l_e >= 0.0) {
        return Err(Error::Input(format!("l_e must be nonnegative, got {l_e}")));
    }
    Ok(c.a * (-c.b * (-c.c * l_e).exp()).exp())
}

/// k from four deflections in inches at load `p_lbf`.
pub fn k_from_deflections_in(d_in: &[f64; 4], p_lbf: f64, c: &AreaConstants) -> Result<KValue> {
    let ba = basin_area(d_in, c)?;
    let l_e = effective_length(ba, c)?;
    let d_star = deflection_coefficient(l_e, c)?;
    let k_pci = p_lbf * d_star / (d_in[0] * l_e * l_e);
    Ok(KValue { basin_area_in: ba, l_e_in: l_e, d_star, k_pci, k_pa_per_m: k_pci * PA_PER_PCI })
}

/// k from a basin (m) produced by a load of `p_lbf`.
pub fn k_from_basin(basin: &DeflectionBasin, p_lbf: f64) -> Result<KValue> {
    check_layout(basin)?;
    let d = std::array::from_fn(|i| m_to_in(basin.deflections[i]));
    k_from_deflections_in(&d, p_lbf, &AreaConstants::default())
}

/// k from a basin computed under `load`, rescaled to the 9000 lbf convention.
pub fn k_from_forward_basin(basin: &DeflectionBasin, load: &FwdLoad) -> Result<KValue> {
    let s = AREA_LOAD_LBF / n_to_lbf(load.magnitude);
    k_from_basin(&basin.scaled(s), AREA_LOAD_LBF)
}

/// Settings of the modified-k pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub stress: StressState,
    pub suction: SuctionModelOptions,
    pub model: ForwardModel,
    pub load: FwdLoad,
}

/// Base modulus (Pa) for a moisture state.
pub fn moisture_adjusted_base_modulus(
    coeffs: &MrCoefficients,
    m: &MoistureState,
    opts: &PipelineOptions,
) -> Result<f64> {
    Ok(mr_suction(coeffs, &opts.stress, m, opts.suction)? * 1e3)
}

/// Modified k for a section whose base is at moisture state `m`.
pub fn modified_k(
    sec: &PavementSection,
    m: &MoistureState,
    coeffs: &MrCoefficients,
    opts: &PipelineOptions,
) -> Result<KValue> {
    let e_base = moisture_adjusted_base_modulus(coeffs, m, opts)?;
    k_for_base_modulus(sec, e_base, opts)
}

/// Modified k with the base modulus given directly.
pub fn k_for_base_modulus(sec: &PavementSection, e_base: f64, opts: &PipelineOptions) -> Result<KValue> {
    let basin = full_structure_basin(sec, e_base, &opts.load, &opts.model)?;
    k_from_forward_basin(&basin, &opts.load)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rigid_body_basin_area() {
        let c = AreaConstants::default();
        assert_eq!(basin_area(&[0.3; 4], &c).unwrap(), 36.0);
        assert_eq!(basin_area(&[1.0, 0.0, 0.0, 0.0], &c).unwrap(), 6.0);
        assert!(basin_area(&[0.0, 0.0, 0.0, 0.0], &c).is_err());
    }

    #[test]
    fn unit_bracket_gives_unit_length() {
        let c = AreaConstants::default();
        let ba = 36.0 - 1812.597 * (-2.559f64).exp();
        assert!((effective_length(ba, &c).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(effective_length(36.0, &c), Err(Error::SingularBasin { .. })));
    }

    #[test]
    fn coefficient_limits() {
        let c = AreaConstants::default();
        assert!((deflection_coefficient(1e6, &c).unwrap() - 0.12450).abs() < 1e-15);
        assert!(deflection_coefficient(-1.0, &c).is_err());
    }

    #[test]
    fn layout_is_checked() {
        let b = DeflectionBasin::new(vec![0.0, 0.3, 0.6, 0.9], vec![1e-4, 8e-5, 6e-5, 4e-5]).unwrap();
        assert!(matches!(k_from_basin(&b, 9000.0), Err(Error::Layout(_))));
    }
}
