//! MEPDG transverse-cracking and joint-faulting transfer functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::{winkler_plate_basin, FwdLoad};
use crate::slab::{transformed_section, PavementSection};
use crate::units::{m_to_in, pci_to_pa_per_m};

/// Calibration constants. The defaults are the MEPDG national values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistressConstants {
    pub c1: f64,
    pub c2: f64,
    pub c34: f64,
}

impl Default for DistressConstants {
    fn default() -> Self {
        DistressConstants { c1: 2.0, c2: 1.22, c34: 0.005 }
    }
}

/// One load-case cell of the fatigue table. Stresses in psi.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FatigueCase {
    pub applied_n: f64,
    pub stress: f64,
    pub modulus_rupture: f64,
    pub label: String,
}

/// One month of the faulting schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultingMonth {
    /// faulting envelope entering the month (in)
    pub faultmax: f64,
    pub de: f64,
}

/// Joint deflections and foundation modulus in one consistent unit system.
/// With the default C34 the customary units are inches and pci.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerDeflections {
    pub loaded: f64,
    pub unloaded: f64,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultingSeries {
    /// cumulative faulting after each month (in)
    pub fault: Vec<f64>,
    /// months whose increment was clamped at the envelope
    pub clamped_months: Vec<usize>,
}

/// Cracked fraction from fatigue damage.
pub fn crack_fraction(fd: f64) -> Result<f64> {
    if !(fd >= 0.0) {
        return Err(Error::Input(format!("damage must be nonnegative, got {fd}")));
    }
    if fd == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (1.0 + fd.powf(-1.68)))
}

/// Total cracking percentage from bottom-up and top-down fractions.
pub fn total_crack(bottom_up: f64, top_down: f64) -> Result<f64> {
    for v in [bottom_up, top_down] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Input(format!("crack fraction {v} outside [0, 1]")));
        }
    }
    Ok((bottom_up + top_down - bottom_up * top_down) * 100.0)
}

/// Allowable load applications.
pub fn allowable_loads(modulus_rupture: f64, stress: f64, c1: f64, c2: f64) -> Result<f64> {
    if !(stress > 0.0) {
        return Err(Error::Input(format!("stress must be positive, got {stress}")));
    }
    if !(modulus_rupture > 0.0) {
        return Err(Error::Input(format!("modulus of rupture must be positive, got {modulus_rupture}")));
    }
    Ok(10f64.powf(c1 * (modulus_rupture / stress).powf(c2) + 0.4371))
}

/// Miner's damage sum over the table.
pub fn miner_damage(cases: &[FatigueCase], c1: f64, c2: f64) -> Result<f64> {
    cases.iter().try_fold(0.0, |acc, c| {
        if !(c.applied_n >= 0.0) {
            return Err(Error::Input(format!("negative applications in case {}", c.label)));
        }
        Ok(acc + c.applied_n / allowable_loads(c.modulus_rupture, c.stress, c1, c2)?)
    })
}

/// Differential energy at a joint corner.
pub fn differential_energy(c: &CornerDeflections) -> Result<f64> {
    if !(c.unloaded >= 0.0 && c.loaded >= c.unloaded) {
        return Err(Error::Input(format!(
            "need loaded >= unloaded >= 0, got {} and {}",
            c.loaded, c.unloaded
        )));
    }
    if !(c.k >= 0.0) {
        return Err(Error::Input(format!("k must be nonnegative, got {}", c.k)));
    }
    Ok(0.5 * c.k * (c.loaded * c.loaded - c.unloaded * c.unloaded))
}

/// Joint deflections from the plate-on-Winkler solver.
///
/// The loaded side is the interior deflection of the equivalent slab under
/// `load`, which understates a true corner deflection. The unloaded side is
/// `lte` times the loaded side. Returns inches and pci.
pub fn winkler_joint_deflections(sec: &PavementSection, k_pci: f64, load: &FwdLoad, lte: f64) -> Result<CornerDeflections> {
    if !(0.0..=1.0).contains(&lte) {
        return Err(Error::Input(format!("load transfer efficiency must lie in [0, 1], got {lte}")));
    }
    let ts = transformed_section(sec)?;
    let b = winkler_plate_basin(ts.h_eq, sec.e_slab, sec.nu_slab, pci_to_pa_per_m(k_pci), load, &[0.0])?;
    let loaded = m_to_in(b.d0());
    Ok(CornerDeflections { loaded, unloaded: lte * loaded, k: k_pci })
}

/// One month's faulting increment.
pub fn fault_increment(faultmax: f64, prior_fault: f64, de: f64, c34: f64) -> f64 {
    c34 * (faultmax - prior_fault).powi(2) * de
}

/// Cumulative faulting from zero over the monthly schedule.
pub fn accumulate_faulting(months: &[FaultingMonth], c34: f64) -> Result<FaultingSeries> {
    let mut fault = Vec::with_capacity(months.len());
    let mut clamped_months = Vec::new();
    let mut current = 0.0;
    for (i, m) in months.iter().enumerate() {
        if !(m.de >= 0.0 && m.faultmax >= 0.0) {
            return Err(Error::Input(format!("month {i}: DE and FAULTMAX must be nonnegative")));
        }
        let next = current + fault_increment(m.faultmax, current, m.de, c34);
        current = if next > m.faultmax && current <= m.faultmax {
            clamped_months.push(i);
            m.faultmax
        } else {
            next
        };
        fault.push(current);
    }
    Ok(FaultingSeries { fault, clamped_months })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crack_fraction_spots() {
        assert_eq!(crack_fraction(1.0).unwrap(), 0.5);
        assert_eq!(crack_fraction(0.0).unwrap(), 0.0);
        assert!(crack_fraction(-0.1).is_err());
    }

    #[test]
    fn total_crack_spots() {
        assert_eq!(total_crack(0.5, 0.5).unwrap(), 75.0);
        assert_eq!(total_crack(1.0, 0.3).unwrap(), 100.0);
        assert!((total_crack(0.0, 0.37).unwrap() - 37.0).abs() < 1e-12);
        assert!(total_crack(1.2, 0.0).is_err());
    }

    #[test]
    fn unit_ratio_loads() {
        let n = allowable_loads(650.0, 650.0, 2.0, 1.22).unwrap();
        assert!((n - 10f64.powf(2.4371)).abs() < 1e-9 * n);
        assert!(allowable_loads(650.0, 0.0, 2.0, 1.22).is_err());
    }

    #[test]
    fn damage_table_edges() {
        assert_eq!(miner_damage(&[], 2.0, 1.22).unwrap(), 0.0);
        let n = allowable_loads(700.0, 400.0, 2.0, 1.22).unwrap();
        let case = FatigueCase { applied_n: n, stress: 400.0, modulus_rupture: 700.0, label: "a".into() };
        assert!((miner_damage(&[case], 2.0, 1.22).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn energy_spots() {
        let c = CornerDeflections { loaded: 0.02, unloaded: 0.02, k: 150.0 };
        assert_eq!(differential_energy(&c).unwrap(), 0.0);
        let bad = CornerDeflections { loaded: 0.01, unloaded: 0.02, k: 150.0 };
        assert!(differential_energy(&bad).is_err());
    }

    #[test]
    fn faulting_fixed_point_and_zero_energy() {
        let s = accumulate_faulting(&[FaultingMonth { faultmax: 0.1, de: 0.0 }; 5], 0.005).unwrap();
        assert!(s.fault.iter().all(|f| *f == 0.0));
        assert_eq!(fault_increment(0.1, 0.1, 3.0, 0.005), 0.0);
    }

    #[test]
    fn faulting_overshoot_is_clamped() {
        let s = accumulate_faulting(&[FaultingMonth { faultmax: 0.1, de: 1e4 }], 0.005).unwrap();
        assert_eq!(s.fault, vec![0.1]);
        assert_eq!(s.clamped_months, vec![0]);
    }
}
