//! Rigid-pavement foundation analysis.
//!
//! The pipeline runs from base-layer moisture state to resilient modulus,
//! forward FWD deflection basins, the AREA-method k-value, a 6-20-1 neural
//! surrogate of k, and the MEPDG cracking and faulting transfer functions.
//!
//! All quantities are SI unless a name says otherwise (`_in`, `_psi`,
//! `_pci`, `_kpa`, `_cm`).

pub mod ann;
pub mod distress;
pub mod error;
pub mod forward;
pub mod hydrostatics;
pub mod ingest;
pub mod kelvin;
pub mod kvalue;
pub mod resilient_modulus;
pub mod sensitivity;
pub mod slab;
pub mod units;
pub mod validation;

pub use error::{Error, Result};
