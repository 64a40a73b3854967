//! Axisymmetric elastic layers under a plate, solved in the Hankel domain.
//!
//! In each isotropic layer the transformed state `[U, W, T, S]` (radial
//! displacement, vertical displacement, shear and normal stress amplitudes
//! of `J1, J0, J1, J0`, z downward) is a combination of four closed-form
//! modes `e^{+-xi z} v1` and `e^{+-xi z} (z v1 + v2)`. Growing modes are
//! referenced to the layer bottom so every exponential is at most one.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// One elastic layer; `thickness = None` marks a half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub e: f64,
    pub nu: f64,
    pub thickness: Option<f64>,
}

/// Mode matrix rows [U, W, T, S] at local depth `z` for the given layer.
/// Columns: growing pair (finite layers only), then decaying pair.
fn modes(xi: f64, layer: &Layer, z: f64) -> Vec<[f64; 4]> {
    let (e, nu) = (layer.e, layer.nu);
    let lam = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    let mu = e / (2.0 * (1.0 + nu));
    let c2 = (lam + 2.0 * mu) / (xi * (lam + mu));
    let c3 = mu / (xi * (lam + mu));
    let vp1 = [1.0, -1.0, 2.0 * mu * xi, -2.0 * mu * xi];
    let vp2 = [c2, c3, 2.0 * mu, 0.0];
    let vm1 = [1.0, 1.0, -2.0 * mu * xi, -2.0 * mu * xi];
    let vm2 = [-c2, c3, 2.0 * mu, 0.0];
    let mut cols = Vec::with_capacity(4);
    if let Some(h) = layer.thickness {
        let zz = z - h;
        let g = (xi * zz).exp();
        cols.push(vp1.map(|v| g * v));
        cols.push(std::array::from_fn(|k| g * (zz * vp1[k] + vp2[k])));
    }
    let d = (-xi * z).exp();
    cols.push(vm1.map(|v| d * v));
    cols.push(std::array::from_fn(|k| d * (z * vm1[k] + vm2[k])));
    cols
}

/// Plate resting on a layer stack, coupled through a linear shear spring.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateOnLayers {
    pub h_plate: f64,
    pub e_plate: f64,
    pub nu_plate: f64,
    /// interface shear stiffness (Pa/m); zero is frictionless
    pub kappa: f64,
    pub layers: Vec<Layer>,
    /// rigid stratum under the last layer when it is finite
    pub rigid_bottom: bool,
}

impl PlateOnLayers {
    fn unknowns(&self) -> Vec<usize> {
        self.layers.iter().map(|l| if l.thickness.is_some() { 4 } else { 2 }).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::Input("at least one foundation layer is required".into()));
        }
        for (i, l) in self.layers.iter().enumerate() {
            let last = i + 1 == self.layers.len();
            if l.thickness.is_none() && !last {
                return Err(Error::Input("only the last layer may be a half-space".into()));
            }
            if !(l.e > 0.0) || !(0.0..0.5).contains(&l.nu) || l.thickness.is_some_and(|h| !(h > 0.0)) {
                return Err(Error::Input(format!("invalid layer {l:?}")));
            }
        }
        if self.layers.last().is_some_and(|l| l.thickness.is_none()) && self.rigid_bottom {
            return Err(Error::Input("a half-space cannot sit on a rigid stratum".into()));
        }
        if self.layers.last().is_some_and(|l| l.thickness.is_some()) && !self.rigid_bottom {
            return Err(Error::Input("a finite last layer needs a rigid stratum".into()));
        }
        if !(self.h_plate > 0.0 && self.e_plate > 0.0 && self.kappa >= 0.0) {
            return Err(Error::Input("invalid plate".into()));
        }
        Ok(())
    }

    /// Plate deflection amplitude per unit load amplitude at wavenumber `xi`.
    pub fn transfer(&self, xi: f64) -> Result<f64> {
        let counts = self.unknowns();
        let nf: usize = counts.iter().sum();
        let (iw, iu) = (nf, nf + 1);
        let n = nf + 2;
        let mut a = DMatrix::<f64>::zeros(n, n);
        let mut b = DVector::<f64>::zeros(n);
        let d = self.e_plate * self.h_plate.powi(3) / (12.0 * (1.0 - self.nu_plate.powi(2)));
        let cm = self.e_plate * self.h_plate / (1.0 - self.nu_plate.powi(2));
        let half = 0.5 * self.h_plate;
        let top = modes(xi, &self.layers[0], 0.0);
        let (u, w, t, s) = (0, 1, 2, 3);
        // contact: foundation top follows the plate
        for (j, col) in top.iter().enumerate() {
            a[(0, j)] = col[w];
        }
        a[(0, iw)] = -1.0;
        // interface spring on the slip between base top and slab bottom fibre
        for (j, col) in top.iter().enumerate() {
            a[(1, j)] = col[t] - self.kappa * col[u];
        }
        a[(1, iu)] = self.kappa;
        a[(1, iw)] = self.kappa * half * xi;
        // plate bending with the eccentric interface shear
        for (j, col) in top.iter().enumerate() {
            a[(2, j)] = -col[s] - half * xi * col[t];
        }
        a[(2, iw)] = d * xi.powi(4);
        b[2] = 1.0;
        // plate membrane
        for (j, col) in top.iter().enumerate() {
            a[(3, j)] = -col[t];
        }
        a[(3, iu)] = cm * xi * xi;
        let mut row = 4;
        let mut off = 0;
        for (i, layer) in self.layers.iter().enumerate() {
            let Some(h) = layer.thickness else { break };
            let bottom = modes(xi, layer, h);
            if let Some(next) = self.layers.get(i + 1) {
                let next_top = modes(xi, next, 0.0);
                let off_next = off + counts[i];
                for k in 0..4 {
                    for (j, col) in bottom.iter().enumerate() {
                        a[(row, off + j)] = col[k];
                    }
                    for (j, col) in next_top.iter().enumerate() {
                        a[(row, off_next + j)] = -col[k];
                    }
                    row += 1;
                }
            } else {
                for k in [u, w] {
                    for (j, col) in bottom.iter().enumerate() {
                        a[(row, off + j)] = col[k];
                    }
                    row += 1;
                }
            }
            off += counts[i];
        }
        debug_assert_eq!(row, n);
        for r in 0..n {
            let m = a.row(r).iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if m > 0.0 {
                a.row_mut(r).scale_mut(1.0 / m);
                b[r] /= m;
            }
        }
        let x = a
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::Solver { msg: format!("singular layer system at xi = {xi:.4e}"), residual: f64::NAN })?;
        let g = x[iw];
        if !g.is_finite() {
            return Err(Error::Solver { msg: format!("non-finite transfer at xi = {xi:.4e}"), residual: f64::NAN });
        }
        Ok(g)
    }
}
