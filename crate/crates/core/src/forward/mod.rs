//! Forward FWD deflection basins.
//!
//! * [`winkler_plate_basin`]: plate on a dense-liquid foundation.
//! * [`halfspace_plate_basin`]: equivalent plate on an elastic half-space.
//! * [`full_structure_basin`]: the training-data generator. By default the
//!   slab is its own plate on an elastic base layer and subgrade over a
//!   rigid stratum, with the slab-base bond as a shear spring.

mod band;
pub mod layered;
pub mod quad;
pub mod winkler;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::slab::{interface_shear_stiffness, transformed_section, PavementSection};
pub use band::BandMatrix;
pub use layered::{Layer, PlateOnLayers};
pub use winkler::{
    point_load_center_deflection, radius_of_relative_stiffness, winkler_plate_basin, winkler_plate_basin_with,
    winkler_series_basin, WinklerOptions,
};

/// FWD sensor offsets (m): 0, 12, 24 and 36 in.
pub const SENSOR_OFFSETS: [f64; 4] = [0.0, 0.3048, 0.6096, 0.9144];

/// Relative tolerance of the Hankel quadrature.
pub const HANKEL_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FwdLoad {
    /// N
    pub magnitude: f64,
    /// m
    pub radius: f64,
}

impl Default for FwdLoad {
    fn default() -> Self {
        FwdLoad { magnitude: 40_000.0, radius: 0.15 }
    }
}

impl FwdLoad {
    pub fn pressure(&self) -> f64 {
        self.magnitude / (PI * self.radius * self.radius)
    }

    pub fn validate(&self) -> Result<()> {
        if self.magnitude > 0.0 && self.radius > 0.0 {
            Ok(())
        } else {
            Err(Error::Input(format!("load magnitude and radius must be positive: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeflectionBasin {
    /// m
    pub offsets: Vec<f64>,
    /// m, downward positive
    pub deflections: Vec<f64>,
}

impl DeflectionBasin {
    pub fn new(offsets: Vec<f64>, deflections: Vec<f64>) -> Result<Self> {
        if offsets.len() != deflections.len() || offsets.is_empty() {
            return Err(Error::Layout("offsets and deflections must have the same nonzero length".into()));
        }
        if offsets[0] != 0.0 || offsets.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Layout("offsets must start at 0 and strictly increase".into()));
        }
        if deflections.iter().any(|d| !d.is_finite()) {
            return Err(Error::Solver { msg: "non-finite deflection".into(), residual: f64::NAN });
        }
        Ok(DeflectionBasin { offsets, deflections })
    }

    pub fn d0(&self) -> f64 {
        self.deflections[0]
    }

    pub fn scaled(&self, s: f64) -> DeflectionBasin {
        DeflectionBasin { offsets: self.offsets.clone(), deflections: self.deflections.iter().map(|d| d * s).collect() }
    }
}

/// Which model stands in for the full pavement structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ForwardModel {
    /// Slab plate, interface shear spring `delta * k_l`, elastic base layer,
    /// subgrade of the given depth (m) over a rigid stratum, or a half-space
    /// when `None`.
    LayeredSlab { subgrade_depth: Option<f64> },
    /// Bond-equivalent plate (`h_eq`) on an elastic subgrade half-space.
    EquivalentHalfspace,
}

impl Default for ForwardModel {
    fn default() -> Self {
        ForwardModel::LayeredSlab { subgrade_depth: Some(3.0) }
    }
}

/// `int_0^inf f(xi) J1(xi a) J0(xi r) dxi` at every offset.
fn hankel_j1_j0<F>(f: F, a: f64, offsets: &[f64], char_width: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let r_max = offsets.iter().fold(0.0_f64, |m, r| m.max(*r));
    let width = (PI / (r_max + a)).min(char_width);
    let max_x = 1e5 * width;
    quad::integrate_semi_infinite(
        |x, out: &mut [f64]| {
            if x == 0.0 {
                out.iter_mut().for_each(|o| *o = 0.0);
                return Ok(());
            }
            let g = f(x)? * libm::j1(x * a);
            for (o, r) in out.iter_mut().zip(offsets) {
                *o = g * libm::j0(x * r);
            }
            Ok(())
        },
        offsets.len(),
        width,
        HANKEL_REL_TOL,
        max_x,
    )
}

/// Plate of thickness `h_eq` on an elastic half-space under a circular load.
pub fn halfspace_plate_basin(
    h_eq: f64,
    e_slab: f64,
    nu: f64,
    e_subgrade: f64,
    nu_subgrade: f64,
    load: &FwdLoad,
    offsets: &[f64],
) -> Result<DeflectionBasin> {
    load.validate()?;
    if !(h_eq > 0.0 && e_slab > 0.0 && e_subgrade > 0.0) || !(0.0..0.5).contains(&nu) || !(0.0..0.5).contains(&nu_subgrade) {
        return Err(Error::Input("invalid plate or half-space parameters".into()));
    }
    let d = winkler::flexural_rigidity(h_eq, e_slab, nu);
    let c = e_subgrade / (2.0 * (1.0 - nu_subgrade * nu_subgrade));
    let ell = (d / c).cbrt();
    let alpha = load.radius / ell;
    let rho: Vec<f64> = offsets.iter().map(|r| r / ell).collect();
    let vals = hankel_j1_j0(|s| Ok(1.0 / (s * (1.0 + s.powi(3)))), alpha, &rho, 1.0)?;
    let scale = load.pressure() * load.radius / c;
    DeflectionBasin::new(offsets.to_vec(), vals.iter().map(|v| scale * v).collect())
}

/// Plate on a layer stack under a circular load.
pub fn plate_on_layers_basin(model: &PlateOnLayers, load: &FwdLoad, offsets: &[f64]) -> Result<DeflectionBasin> {
    load.validate()?;
    model.validate()?;
    let thinnest = model.layers.iter().filter_map(|l| l.thickness).fold(f64::INFINITY, f64::min);
    let char_width = thinnest.recip().clamp(0.5, 10.0);
    let q = load.pressure() * load.radius;
    let vals = hankel_j1_j0(|xi| Ok(q * model.transfer(xi)?), load.radius, offsets, char_width)?;
    DeflectionBasin::new(offsets.to_vec(), vals)
}

/// Layer stack for a pavement section with the given base modulus.
pub fn layered_slab_model(sec: &PavementSection, e_base: f64, subgrade_depth: Option<f64>) -> Result<PlateOnLayers> {
    let sec = sec.with_base_modulus(e_base);
    sec.validate()?;
    let k_l = interface_shear_stiffness(sec.e_base, sec.nu_base, sec.h_b)?;
    if subgrade_depth.is_some_and(|h| !(h > 0.0)) {
        return Err(Error::Input("subgrade depth must be positive".into()));
    }
    Ok(PlateOnLayers {
        h_plate: sec.h_s,
        e_plate: sec.e_slab,
        nu_plate: sec.nu_slab,
        kappa: sec.delta * k_l,
        layers: vec![
            Layer { e: sec.e_base, nu: sec.nu_base, thickness: Some(sec.h_b) },
            Layer { e: sec.e_subgrade, nu: sec.nu_subgrade, thickness: subgrade_depth },
        ],
        rigid_bottom: subgrade_depth.is_some(),
    })
}

/// Surface basin of the full pavement structure at the standard sensors.
pub fn full_structure_basin(
    sec: &PavementSection,
    e_base: f64,
    load: &FwdLoad,
    model: &ForwardModel,
) -> Result<DeflectionBasin> {
    full_structure_basin_at(sec, e_base, load, model, &SENSOR_OFFSETS)
}

pub fn full_structure_basin_at(
    sec: &PavementSection,
    e_base: f64,
    load: &FwdLoad,
    model: &ForwardModel,
    offsets: &[f64],
) -> Result<DeflectionBasin> {
    match *model {
        ForwardModel::LayeredSlab { subgrade_depth } => {
            let m = layered_slab_model(sec, e_base, subgrade_depth)?;
            plate_on_layers_basin(&m, load, offsets)
        }
        ForwardModel::EquivalentHalfspace => {
            let sec = sec.with_base_modulus(e_base);
            let ts = transformed_section(&sec)?;
            halfspace_plate_basin(ts.h_eq, sec.e_slab, sec.nu_slab, sec.e_subgrade, sec.nu_subgrade, load, offsets)
        }
    }
}
