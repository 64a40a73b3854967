//! Axisymmetric thin plate on a dense-liquid (Winkler) foundation.
//!
//! The product solver is a finite-volume discretisation of
//! `D lap(lap(w)) + k w = q` on a disk of radius `20 l` with a clamped rim,
//! refined until the centre deflection settles. The Kelvin-function closed
//! form for an infinite plate is kept as an independent check.

use std::f64::consts::PI;

use super::band::BandMatrix;
use super::{DeflectionBasin, FwdLoad};
use crate::error::{Error, Result};
use crate::kelvin::kelvin;

/// Grid and convergence settings for [`winkler_plate_basin`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinklerOptions {
    /// domain radius in units of the radius of relative stiffness
    pub domain_ratio: f64,
    /// initial nodes per radius of relative stiffness
    pub initial_density: usize,
    pub max_density: usize,
    /// relative change in centre deflection accepted as converged
    pub rel_tol: f64,
}

impl Default for WinklerOptions {
    fn default() -> Self {
        WinklerOptions { domain_ratio: 20.0, initial_density: 64, max_density: 8192, rel_tol: 1e-4 }
    }
}

pub fn flexural_rigidity(h: f64, e: f64, nu: f64) -> f64 {
    e * h.powi(3) / (12.0 * (1.0 - nu * nu))
}

/// Radius of relative stiffness `(D/k)^(1/4)`.
pub fn radius_of_relative_stiffness(h: f64, e: f64, nu: f64, k: f64) -> f64 {
    (flexural_rigidity(h, e, nu) / k).powf(0.25)
}

fn check_inputs(h_eq: f64, e_slab: f64, nu: f64, k: f64, load: &FwdLoad) -> Result<()> {
    if !(h_eq > 0.0 && e_slab > 0.0 && k > 0.0) || !(0.0..0.5).contains(&nu) {
        return Err(Error::Input(format!("invalid plate/foundation h={h_eq} E={e_slab} nu={nu} k={k}")));
    }
    load.validate()
}

/// Nodal deflections `w_0..w_N` (with `w_N = 0`) on a grid of spacing `h`.
fn solve_grid(d: f64, k: f64, load: &FwdLoad, h: f64, n: usize) -> Result<(Vec<f64>, f64)> {
    // Finite-volume Laplacian rows over nodes 0..=n; the clamped rim gives
    // w_n = 0 and a mirrored ghost w_{n+1} = w_{n-1}.
    let lap_row = |i: usize| -> [(usize, f64); 3] {
        let h2 = h * h;
        if i == 0 {
            return [(0, -4.0 / h2), (1, 4.0 / h2), (1, 0.0)];
        }
        let fi = i as f64;
        let (cp, cm) = ((fi + 0.5) / (fi * h2), (fi - 0.5) / (fi * h2));
        let up = if i == n { i - 1 } else { i + 1 };
        [(i - 1, cm), (i, -(cp + cm)), (up, cp)]
    };
    let mut a = BandMatrix::zeros(n, 2, 2);
    for i in 0..n {
        for (l, cl) in lap_row(i) {
            if cl == 0.0 {
                continue;
            }
            for (j, cj) in lap_row(l) {
                if j < n && cj != 0.0 {
                    a.add(i, j, d * cl * cj);
                }
            }
        }
        a.add(i, i, k);
    }
    let q0 = load.pressure();
    let rhs: Vec<f64> = (0..n)
        .map(|i| {
            let lo = if i == 0 { 0.0 } else { (i as f64 - 0.5) * h };
            let hi = (i as f64 + 0.5) * h;
            let covered = hi.min(load.radius).powi(2) - lo.min(load.radius).powi(2);
            q0 * covered.max(0.0) / (hi * hi - lo * lo)
        })
        .collect();
    let w = a.solve(&rhs)?;
    let aw = a.mul(&w);
    let scale = a.mul_abs(&w).iter().fold(q0, |m, v| m.max(*v));
    let resid = aw.iter().zip(&rhs).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max) / scale;
    let mut full = w;
    full.push(0.0);
    Ok((full, resid))
}

fn sample(w: &[f64], h: f64, r: f64) -> f64 {
    let n = w.len() - 1;
    if r >= n as f64 * h {
        return 0.0;
    }
    let s = r / h;
    let i0 = (s.floor() as isize - 1).clamp(0, n as isize - 3) as usize;
    let xs: Vec<f64> = (i0..i0 + 4).map(|i| i as f64).collect();
    let mut out = 0.0;
    for j in 0..4 {
        let mut lj = 1.0;
        for m in 0..4 {
            if m != j {
                lj *= (s - xs[m]) / (xs[j] - xs[m]);
            }
        }
        out += lj * w[i0 + j];
    }
    out
}

/// Surface deflections of the plate under a uniform circular load.
pub fn winkler_plate_basin(
    h_eq: f64,
    e_slab: f64,
    nu: f64,
    k: f64,
    load: &FwdLoad,
    offsets: &[f64],
) -> Result<DeflectionBasin> {
    winkler_plate_basin_with(h_eq, e_slab, nu, k, load, offsets, &WinklerOptions::default())
}

pub fn winkler_plate_basin_with(
    h_eq: f64,
    e_slab: f64,
    nu: f64,
    k: f64,
    load: &FwdLoad,
    offsets: &[f64],
    opts: &WinklerOptions,
) -> Result<DeflectionBasin> {
    check_inputs(h_eq, e_slab, nu, k, load)?;
    let d = flexural_rigidity(h_eq, e_slab, nu);
    let ell = (d / k).powf(0.25);
    let mut density = opts.initial_density;
    let mut prev: Option<f64> = None;
    let mut last_change = f64::INFINITY;
    while density <= opts.max_density {
        let h = ell / density as f64;
        let n = (opts.domain_ratio * density as f64).round() as usize;
        let (w, resid) = solve_grid(d, k, load, h, n)?;
        if resid > 1e-6 {
            return Err(Error::Solver { msg: "plate system residual too large".into(), residual: resid });
        }
        if let Some(p) = prev {
            last_change = ((w[0] - p) / w[0]).abs();
            if last_change < opts.rel_tol {
                let deflections = offsets.iter().map(|&r| sample(&w, h, r)).collect();
                return DeflectionBasin::new(offsets.to_vec(), deflections);
            }
        }
        prev = Some(w[0]);
        density *= 2;
    }
    Err(Error::Solver { msg: "plate grid refinement did not converge".into(), residual: last_change })
}

/// Infinite-plate closed form in Kelvin functions.
pub fn winkler_series_basin(
    h_eq: f64,
    e_slab: f64,
    nu: f64,
    k: f64,
    load: &FwdLoad,
    offsets: &[f64],
) -> Result<DeflectionBasin> {
    check_inputs(h_eq, e_slab, nu, k, load)?;
    let ell = radius_of_relative_stiffness(h_eq, e_slab, nu, k);
    let alpha = load.radius / ell;
    let q = load.pressure();
    let ka = kelvin(alpha);
    let deflections = offsets
        .iter()
        .map(|&r| {
            let x = r / ell;
            if x <= alpha {
                let kx = if x > 0.0 { kelvin(x) } else { kelvin_at_zero() };
                q / k * (1.0 + alpha * ka.dker * kx.ber - alpha * ka.dkei * kx.bei)
            } else {
                let kx = kelvin(x);
                q / k * (alpha * ka.dber * kx.ker - alpha * ka.dbei * kx.kei)
            }
        })
        .collect();
    DeflectionBasin::new(offsets.to_vec(), deflections)
}

fn kelvin_at_zero() -> crate::kelvin::Kelvin {
    crate::kelvin::Kelvin {
        ber: 1.0,
        bei: 0.0,
        ker: f64::INFINITY,
        kei: -PI / 4.0,
        dber: 0.0,
        dbei: 0.0,
        dker: f64::NEG_INFINITY,
        dkei: 0.0,
    }
}

/// Point-load centre deflection `P / (8 k l^2)`.
pub fn point_load_center_deflection(p: f64, h_eq: f64, e_slab: f64, nu: f64, k: f64) -> f64 {
    let ell = radius_of_relative_stiffness(h_eq, e_slab, nu, k);
    p / (8.0 * k * ell * ell)
}
