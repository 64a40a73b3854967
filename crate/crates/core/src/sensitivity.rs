//! Percentage change of k with bond condition and with base moisture.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ingest::{expand_scenarios, MoistureLevel, ScenarioFixture, SectionFixture};
use crate::kvalue::{k_for_base_modulus, moisture_adjusted_base_modulus, PipelineOptions};
use crate::slab::PavementSection;

/// `(k - k_base) / k_base * 100`.
pub fn percent_change(k: f64, k_base: f64) -> f64 {
    (k - k_base) / k_base * 100.0
}

/// k (pci) of one (moisture, bond) run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunK {
    pub level: MoistureLevel,
    pub delta: f64,
    pub e_base_pa: f64,
    pub k_pci: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSensitivity {
    pub section_id: String,
    pub partial_delta: f64,
    pub runs: Vec<RunK>,
    /// equilibrium moisture, k at no / partial / full bond
    pub k_bond: [f64; 3],
    /// change relative to no bond at partial and full bond, percent
    pub bond_change: [f64; 2],
    /// partial bond, k at saturated / equilibrium / 80 % equilibrium
    pub k_moisture: [f64; 3],
    /// change relative to saturated at equilibrium and 80 % equilibrium, percent
    pub moisture_change: [f64; 2],
    pub warnings: Vec<String>,
}

/// Bond and moisture sensitivity of one section with a caller-supplied k
/// predictor `(section, base modulus Pa) -> k pci`.
pub fn section_sensitivity_with<F>(
    fixture: &SectionFixture,
    scenarios: &[ScenarioFixture],
    opts: &PipelineOptions,
    predict: F,
) -> Result<SectionSensitivity>
where
    F: Fn(&PavementSection, f64) -> Result<f64>,
{
    let set = expand_scenarios(fixture, scenarios)?;
    let base = fixture.to_section();
    let mut runs = Vec::with_capacity(set.runs.len());
    for r in &set.runs {
        let e_base = moisture_adjusted_base_modulus(&r.coeffs, &r.moisture, opts)?;
        let k = predict(&base.with_delta(r.delta), e_base)?;
        runs.push(RunK { level: r.level, delta: r.delta, e_base_pa: e_base, k_pci: k });
    }
    let find = |level: MoistureLevel, delta: f64| {
        runs.iter().find(|r| r.level == level && r.delta == delta).map(|r| r.k_pci).expect("expanded run present")
    };
    let d = fixture.delta;
    let k_bond = [0.0, d, 1.0].map(|x| find(MoistureLevel::Equilibrium, x));
    let k_moisture = MoistureLevel::ALL.map(|m| find(m, d));
    Ok(SectionSensitivity {
        section_id: fixture.id(),
        partial_delta: d,
        bond_change: [percent_change(k_bond[1], k_bond[0]), percent_change(k_bond[2], k_bond[0])],
        moisture_change: [percent_change(k_moisture[1], k_moisture[0]), percent_change(k_moisture[2], k_moisture[0])],
        k_bond,
        k_moisture,
        runs,
        warnings: set.warnings,
    })
}

/// Sensitivity with the exact forward chain.
pub fn section_sensitivity(
    fixture: &SectionFixture,
    scenarios: &[ScenarioFixture],
    opts: &PipelineOptions,
) -> Result<SectionSensitivity> {
    section_sensitivity_with(fixture, scenarios, opts, |sec, e_base| Ok(k_for_base_modulus(sec, e_base, opts)?.k_pci))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_is_zero_change() {
        assert_eq!(percent_change(123.4, 123.4), 0.0);
        assert!((percent_change(110.0, 100.0) - 10.0).abs() < 1e-12);
    }
}
