//! Single-hidden-layer feed-forward surrogate of the modified k-value.
//!
//! Inputs are slab thickness, base thickness (m), slab, base and subgrade
//! moduli (Pa) and the bond ratio. Inputs and the target are scaled
//! linearly to [-1, 1]; the hidden layer is log-sigmoid and the output is
//! linear.

pub mod dataset;
pub mod train;

use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dataset::{
    evaluate, generate_dataset, read_dataset_csv, split, write_dataset_csv, DataRow, Dataset, GridLevels, Metrics, SplitLabel,
};
pub use train::{train_gd, train_lm, EpochLog, StopReason, TrainOptions, TrainReport};

pub const MODEL_VERSION: &str = "slabk-ann v1";
pub const N_INPUTS: usize = 6;
pub const INPUT_NAMES: [&str; N_INPUTS] = ["h_slab_m", "h_base_m", "e_slab_pa", "e_base_pa", "e_subgrade_pa", "delta"];
/// Fraction of the input range tolerated beyond each bound before warning.
pub const EXTRAPOLATION_GUARD: f64 = 0.10;

/// Linear min/max scaling to [-1, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationSpec {
    pub input_min: Vec<f64>,
    pub input_max: Vec<f64>,
    pub output_min: f64,
    pub output_max: f64,
}

fn to_unit(v: f64, lo: f64, hi: f64) -> f64 {
    2.0 * (v - lo) / (hi - lo) - 1.0
}

fn from_unit(u: f64, lo: f64, hi: f64) -> f64 {
    lo + 0.5 * (u + 1.0) * (hi - lo)
}

impl NormalizationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.input_min.len() != self.input_max.len() {
            return Err(Error::Model("normalization bounds have different lengths".into()));
        }
        let bad = self.input_min.iter().zip(&self.input_max).any(|(a, b)| !(b > a));
        if bad || !(self.output_max > self.output_min) {
            return Err(Error::Model("normalization needs max > min for every feature".into()));
        }
        Ok(())
    }

    pub fn normalize_inputs(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(self.input_min.iter().zip(&self.input_max)).map(|(v, (lo, hi))| to_unit(*v, *lo, *hi)).collect()
    }

    pub fn denormalize_inputs(&self, u: &[f64]) -> Vec<f64> {
        u.iter().zip(self.input_min.iter().zip(&self.input_max)).map(|(v, (lo, hi))| from_unit(*v, *lo, *hi)).collect()
    }

    pub fn normalize_output(&self, y: f64) -> f64 {
        to_unit(y, self.output_min, self.output_max)
    }

    pub fn denormalize_output(&self, u: f64) -> f64 {
        from_unit(u, self.output_min, self.output_max)
    }

    /// Names of inputs lying more than the guard fraction outside their range.
    pub fn out_of_range(&self, x: &[f64]) -> Vec<String> {
        x.iter()
            .enumerate()
            .filter_map(|(i, v)| {
                let (lo, hi) = (self.input_min[i], self.input_max[i]);
                let pad = EXTRAPOLATION_GUARD * (hi - lo);
                (*v < lo - pad || *v > hi + pad).then(|| {
                    let name = INPUT_NAMES.get(i).copied().unwrap_or("input");
                    format!("{name} = {v} outside [{lo}, {hi}] by more than {:.0}%", EXTRAPOLATION_GUARD * 100.0)
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrainingMetadata {
    pub trainer: String,
    pub seed: u64,
    pub epochs: usize,
    pub stop_reason: String,
    pub train_rmse_pci: f64,
    pub validation_rmse_pci: f64,
    pub validation_r2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnModel {
    pub version: String,
    pub inputs: usize,
    pub hidden: usize,
    /// `hidden x inputs`, row-major by hidden unit
    pub hidden_weights: Vec<Vec<f64>>,
    pub hidden_biases: Vec<f64>,
    pub output_weights: Vec<f64>,
    pub output_bias: f64,
    pub steepness: f64,
    pub norm: NormalizationSpec,
    pub target_unit: String,
    pub metadata: TrainingMetadata,
}

/// k prediction with any range warnings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub k_pci: f64,
    pub warnings: Vec<String>,
}

pub fn log_sigmoid(x: f64, steepness: f64) -> f64 {
    1.0 / (1.0 + (-steepness * x).exp())
}

impl AnnModel {
    /// Zero network with the given topology.
    pub fn zeros(inputs: usize, hidden: usize, norm: NormalizationSpec) -> Self {
        AnnModel {
            version: MODEL_VERSION.into(),
            inputs,
            hidden,
            hidden_weights: vec![vec![0.0; inputs]; hidden],
            hidden_biases: vec![0.0; hidden],
            output_weights: vec![0.0; hidden],
            output_bias: 0.0,
            steepness: 1.0,
            norm,
            target_unit: "pci".into(),
            metadata: TrainingMetadata::default(),
        }
    }

    /// Uniform `[-0.5, 0.5] / sqrt(fan_in)` initialisation.
    pub fn seeded(inputs: usize, hidden: usize, norm: NormalizationSpec, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = Self::zeros(inputs, hidden, norm);
        let s1 = 1.0 / (inputs as f64).sqrt();
        let s2 = 1.0 / (hidden as f64).sqrt();
        for row in &mut m.hidden_weights {
            for w in row.iter_mut() {
                *w = rng.gen_range(-0.5..0.5) * s1;
            }
        }
        for b in &mut m.hidden_biases {
            *b = rng.gen_range(-0.5..0.5) * s1;
        }
        for w in &mut m.output_weights {
            *w = rng.gen_range(-0.5..0.5) * s2;
        }
        m.output_bias = rng.gen_range(-0.5..0.5) * s2;
        m
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != MODEL_VERSION {
            return Err(Error::Model(format!("unsupported model version '{}'", self.version)));
        }
        let dims_ok = self.hidden_weights.len() == self.hidden
            && self.hidden_weights.iter().all(|r| r.len() == self.inputs)
            && self.hidden_biases.len() == self.hidden
            && self.output_weights.len() == self.hidden
            && self.norm.input_min.len() == self.inputs
            && self.norm.input_max.len() == self.inputs;
        if !dims_ok {
            return Err(Error::Model(format!("dimension mismatch for a {}-{}-1 network", self.inputs, self.hidden)));
        }
        if !(self.steepness > 0.0) {
            return Err(Error::Model("steepness must be positive".into()));
        }
        self.norm.validate()
    }

    pub fn n_params(&self) -> usize {
        self.hidden * self.inputs + 2 * self.hidden + 1
    }

    /// Parameters as `[W1 row-major, b1, w2, b2]`.
    pub fn params(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.n_params());
        for row in &self.hidden_weights {
            p.extend_from_slice(row);
        }
        p.extend_from_slice(&self.hidden_biases);
        p.extend_from_slice(&self.output_weights);
        p.push(self.output_bias);
        p
    }

    pub fn set_params(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.n_params());
        let (ni, nh) = (self.inputs, self.hidden);
        for (j, row) in self.hidden_weights.iter_mut().enumerate() {
            row.copy_from_slice(&p[j * ni..(j + 1) * ni]);
        }
        let o = nh * ni;
        self.hidden_biases.copy_from_slice(&p[o..o + nh]);
        self.output_weights.copy_from_slice(&p[o + nh..o + 2 * nh]);
        self.output_bias = p[o + 2 * nh];
    }

    /// Output in normalized units for normalized inputs.
    pub fn forward_normalized(&self, u: &[f64]) -> f64 {
        self.hidden_weights
            .iter()
            .zip(&self.hidden_biases)
            .zip(&self.output_weights)
            .map(|((w, b), v)| {
                let z: f64 = w.iter().zip(u).map(|(a, x)| a * x).sum::<f64>() + b;
                v * log_sigmoid(z, self.steepness)
            })
            .sum::<f64>()
            + self.output_bias
    }

    /// Normalized output and its gradient with respect to all parameters.
    pub fn output_and_gradient(&self, u: &[f64], grad: &mut [f64]) -> f64 {
        let (ni, nh) = (self.inputs, self.hidden);
        let mut y = self.output_bias;
        for j in 0..nh {
            let z: f64 = self.hidden_weights[j].iter().zip(u).map(|(a, x)| a * x).sum::<f64>() + self.hidden_biases[j];
            let a = log_sigmoid(z, self.steepness);
            y += self.output_weights[j] * a;
            // back-propagate dy/dz_j through the sigmoid
            let delta = self.output_weights[j] * self.steepness * a * (1.0 - a);
            for i in 0..ni {
                grad[j * ni + i] = delta * u[i];
            }
            grad[nh * ni + j] = delta;
            grad[nh * ni + nh + j] = a;
        }
        grad[nh * ni + 2 * nh] = 1.0;
        y
    }

    /// k prediction (pci) for raw SI inputs.
    pub fn predict(&self, x: &[f64]) -> f64 {
        self.norm.denormalize_output(self.forward_normalized(&self.norm.normalize_inputs(x)))
    }

    /// Prediction with extrapolation warnings.
    pub fn forward(&self, x: &[f64]) -> Result<Prediction> {
        if x.len() != self.inputs {
            return Err(Error::Input(format!("expected {} inputs, got {}", self.inputs, x.len())));
        }
        Ok(Prediction { k_pci: self.predict(x), warnings: self.norm.out_of_range(x) })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: AnnModel = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm() -> NormalizationSpec {
        NormalizationSpec { input_min: vec![0.0; 6], input_max: vec![1.0; 6], output_min: 100.0, output_max: 300.0 }
    }

    #[test]
    fn constant_network() {
        let mut m = AnnModel::zeros(6, 20, norm());
        m.output_bias = 0.25;
        let want = norm().denormalize_output(0.25);
        for x in [[0.1; 6], [0.9; 6]] {
            assert_eq!(m.predict(&x), want);
        }
    }

    #[test]
    fn sigmoid_midpoint() {
        for phi in [0.5, 1.0, 1e6] {
            assert_eq!(log_sigmoid(0.0, phi), 0.5);
        }
        assert!(log_sigmoid(1e-3, 1e9) > 0.999);
    }

    #[test]
    fn json_roundtrip_and_dimension_check() {
        let m = AnnModel::seeded(6, 20, norm(), 3);
        let back = AnnModel::from_json(&m.to_json().unwrap()).unwrap();
        assert_eq!(back, m);
        let mut bad = m.clone();
        bad.output_weights.pop();
        let text = serde_json::to_string(&bad).unwrap();
        assert!(matches!(AnnModel::from_json(&text), Err(Error::Model(_))));
    }

    #[test]
    fn params_roundtrip() {
        let m = AnnModel::seeded(6, 5, norm(), 9);
        let mut z = AnnModel::zeros(6, 5, norm());
        z.set_params(&m.params());
        assert_eq!(z, m);
    }
}
