//! Full-structure basin against the equivalent slab on the modified k.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::forward::{full_structure_basin, winkler_plate_basin, DeflectionBasin};
use crate::kvalue::{k_from_forward_basin, PipelineOptions};
use crate::slab::{transformed_section, PavementSection};
use crate::units::pci_to_pa_per_m;

/// Allowed deviation at the inner three sensors, percent.
pub const INNER_SENSOR_TOL_PCT: f64 = 10.0;
/// Allowed deviation at the farthest sensor, percent.
pub const FAR_SENSOR_TOL_PCT: f64 = 25.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasinComparison {
    pub full: DeflectionBasin,
    pub equivalent: DeflectionBasin,
    pub h_eq: f64,
    pub k_pci: f64,
    /// `(equivalent - full) / full * 100` per sensor
    pub deviation_pct: Vec<f64>,
}

impl BasinComparison {
    pub fn passes(&self) -> bool {
        let n = self.deviation_pct.len();
        self.deviation_pct.iter().enumerate().all(|(i, d)| {
            let tol = if i + 1 == n { FAR_SENSOR_TOL_PCT } else { INNER_SENSOR_TOL_PCT };
            d.abs() <= tol
        })
    }
}

/// Compares the full-structure basin of `sec` with the equivalent slab on a
/// Winkler foundation. `k_pci` defaults to the AREA k of the full basin.
pub fn compare_basins(sec: &PavementSection, k_pci: Option<f64>, opts: &PipelineOptions) -> Result<BasinComparison> {
    let full = full_structure_basin(sec, sec.e_base, &opts.load, &opts.model)?;
    let k_pci = match k_pci {
        Some(k) => k,
        None => k_from_forward_basin(&full, &opts.load)?.k_pci,
    };
    let ts = transformed_section(sec)?;
    let equivalent =
        winkler_plate_basin(ts.h_eq, sec.e_slab, sec.nu_slab, pci_to_pa_per_m(k_pci), &opts.load, &full.offsets)?;
    let deviation_pct =
        full.deflections.iter().zip(&equivalent.deflections).map(|(f, e)| (e - f) / f * 100.0).collect();
    Ok(BasinComparison { full, equivalent, h_eq: ts.h_eq, k_pci, deviation_pct })
}
