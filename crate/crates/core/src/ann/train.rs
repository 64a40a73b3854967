//! Levenberg-Marquardt and plain gradient-descent training.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::dataset::{evaluate, DataRow, Dataset, SplitLabel};
use super::{AnnModel, NormalizationSpec, N_INPUTS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainOptions {
    pub hidden: usize,
    pub seed: u64,
    pub max_epochs: usize,
    pub mu_init: f64,
    pub mu_max: f64,
    pub min_grad: f64,
    /// consecutive epochs without a new best validation RMSE
    pub max_fail: usize,
    pub steepness: f64,
    /// gradient-descent step size (normalized units)
    pub learning_rate: f64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            hidden: 20,
            seed: 7,
            max_epochs: 1000,
            mu_init: 1e-3,
            mu_max: 1e10,
            min_grad: 1e-7,
            max_fail: 6,
            steepness: 1.0,
            learning_rate: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    MinGradient,
    DampingOverflow,
    ValidationStop,
    EpochBudget,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::MinGradient => "minimum gradient",
            StopReason::DampingOverflow => "damping overflow",
            StopReason::ValidationStop => "validation stop",
            StopReason::EpochBudget => "epoch budget",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpochLog {
    pub epoch: usize,
    pub mu: f64,
    pub train_rmse_pci: f64,
    pub validation_rmse_pci: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    /// parameters at the best validation epoch
    pub model: AnnModel,
    pub history: Vec<EpochLog>,
    pub stop: StopReason,
    /// training MSE (normalized) after every accepted step, starting at the initial one
    pub accepted_mse: Vec<f64>,
    pub best_epoch: usize,
}

struct Normalized {
    u: Vec<[f64; N_INPUTS]>,
    t: Vec<f64>,
}

fn normalize_rows(rows: &[DataRow], norm: &NormalizationSpec) -> Normalized {
    Normalized {
        u: rows
            .iter()
            .map(|r| {
                let v = norm.normalize_inputs(&r.inputs);
                std::array::from_fn(|i| v[i])
            })
            .collect(),
        t: rows.iter().map(|r| norm.normalize_output(r.k_pci)).collect(),
    }
}

fn sse(model: &AnnModel, d: &Normalized) -> f64 {
    d.u.iter().zip(&d.t).map(|(u, t)| (model.forward_normalized(u) - t).powi(2)).sum()
}

fn jacobian(model: &AnnModel, d: &Normalized) -> (DMatrix<f64>, DVector<f64>) {
    let p = model.n_params();
    let n = d.t.len();
    let mut j = DMatrix::<f64>::zeros(n, p);
    let mut e = DVector::<f64>::zeros(n);
    let mut g = vec![0.0; p];
    for (r, (u, t)) in d.u.iter().zip(&d.t).enumerate() {
        let y = model.output_and_gradient(u, &mut g);
        e[r] = y - t;
        for (c, v) in g.iter().enumerate() {
            j[(r, c)] = *v;
        }
    }
    (j, e)
}

fn rmse_pci(sse_norm: f64, n: usize, norm: &NormalizationSpec) -> f64 {
    (sse_norm / n as f64).sqrt() * 0.5 * (norm.output_max - norm.output_min)
}

fn prepare(data: &Dataset, labels: &[SplitLabel], norm: &NormalizationSpec) -> Result<(Normalized, Normalized, Vec<DataRow>)> {
    if labels.len() != data.rows.len() {
        return Err(Error::Input("split labels do not match the dataset".into()));
    }
    norm.validate()?;
    let train = data.subset(labels, SplitLabel::Train);
    let val = data.subset(labels, SplitLabel::Validation);
    if train.is_empty() {
        return Err(Error::Input("empty training split".into()));
    }
    Ok((normalize_rows(&train, norm), normalize_rows(&val, norm), val))
}

fn finish(
    mut best: AnnModel,
    opts: &TrainOptions,
    trainer: &str,
    history: Vec<EpochLog>,
    stop: StopReason,
    accepted_mse: Vec<f64>,
    best_epoch: usize,
    val_rows: &[DataRow],
) -> Result<TrainReport> {
    let log = history.iter().find(|h| h.epoch == best_epoch).copied();
    best.metadata.trainer = trainer.into();
    best.metadata.seed = opts.seed;
    best.metadata.epochs = history.last().map_or(0, |h| h.epoch);
    best.metadata.stop_reason = stop.as_str().into();
    best.metadata.train_rmse_pci = log.map_or(f64::NAN, |l| l.train_rmse_pci);
    best.metadata.validation_rmse_pci = log.map_or(f64::NAN, |l| l.validation_rmse_pci);
    best.metadata.validation_r2 = if val_rows.len() > 1 { evaluate(&best, val_rows).map_or(f64::NAN, |m| m.r2) } else { f64::NAN };
    Ok(TrainReport { model: best, history, stop, accepted_mse, best_epoch })
}

/// Levenberg-Marquardt training of a 6-H-1 network.
pub fn train_lm(data: &Dataset, labels: &[SplitLabel], norm: NormalizationSpec, opts: &TrainOptions) -> Result<TrainReport> {
    let (tr, va, val_rows) = prepare(data, labels, &norm)?;
    let mut model = AnnModel::seeded(N_INPUTS, opts.hidden, norm.clone(), opts.seed);
    model.steepness = opts.steepness;
    let np = model.n_params();
    let mut mu = opts.mu_init;
    let (mut j, mut e) = jacobian(&model, &tr);
    let mut cur = e.norm_squared();
    let val_rmse = |m: &AnnModel| if va.t.is_empty() { f64::NAN } else { rmse_pci(sse(m, &va), va.t.len(), &norm) };
    let mut history = vec![EpochLog { epoch: 0, mu, train_rmse_pci: rmse_pci(cur, tr.t.len(), &norm), validation_rmse_pci: val_rmse(&model) }];
    let mut accepted_mse = vec![cur / tr.t.len() as f64];
    let mut best = (model.clone(), history[0].validation_rmse_pci, 0usize);
    let mut fails = 0;
    let mut stop = StopReason::EpochBudget;
    for epoch in 1..=opts.max_epochs {
        let g = j.tr_mul(&e);
        if g.norm() < opts.min_grad {
            stop = StopReason::MinGradient;
            break;
        }
        let h = j.tr_mul(&j);
        let p = DVector::from_vec(model.params());
        let mut accepted = false;
        while mu <= opts.mu_max {
            let mut a = h.clone();
            for i in 0..np {
                a[(i, i)] += mu;
            }
            let step = a.cholesky().map(|c| c.solve(&(-&g)));
            if let Some(dp) = step {
                let mut trial = model.clone();
                trial.set_params((&p + &dp).as_slice());
                let s = sse(&trial, &tr);
                if !s.is_finite() {
                    return Err(Error::Training(format!("non-finite training loss at epoch {epoch} (mu = {mu:e})")));
                }
                if s < cur {
                    model = trial;
                    cur = s;
                    mu = (mu / 10.0).max(1e-20);
                    accepted = true;
                    break;
                }
            }
            mu *= 10.0;
        }
        if !accepted {
            stop = StopReason::DampingOverflow;
            break;
        }
        accepted_mse.push(cur / tr.t.len() as f64);
        (j, e) = jacobian(&model, &tr);
        let v = val_rmse(&model);
        history.push(EpochLog { epoch, mu, train_rmse_pci: rmse_pci(cur, tr.t.len(), &norm), validation_rmse_pci: v });
        if va.t.is_empty() || v < best.1 {
            best = (model.clone(), v, epoch);
            fails = 0;
        } else {
            fails += 1;
            if fails >= opts.max_fail {
                stop = StopReason::ValidationStop;
                break;
            }
        }
    }
    let best_model = if va.t.is_empty() { model } else { best.0 };
    let best_epoch = if va.t.is_empty() { history.last().map_or(0, |h| h.epoch) } else { best.2 };
    finish(best_model, opts, "levenberg-marquardt", history, stop, accepted_mse, best_epoch, &val_rows)
}

/// Full-batch gradient descent on the same loss; a slow baseline trainer.
pub fn train_gd(data: &Dataset, labels: &[SplitLabel], norm: NormalizationSpec, opts: &TrainOptions) -> Result<TrainReport> {
    let (tr, va, val_rows) = prepare(data, labels, &norm)?;
    let mut model = AnnModel::seeded(N_INPUTS, opts.hidden, norm.clone(), opts.seed);
    model.steepness = opts.steepness;
    let n = tr.t.len() as f64;
    let val_rmse = |m: &AnnModel| if va.t.is_empty() { f64::NAN } else { rmse_pci(sse(m, &va), va.t.len(), &norm) };
    let mut history = Vec::new();
    let mut accepted_mse = Vec::new();
    let mut best = (model.clone(), f64::INFINITY, 0usize);
    let mut fails = 0;
    let mut stop = StopReason::EpochBudget;
    for epoch in 0..=opts.max_epochs {
        let (j, e) = jacobian(&model, &tr);
        let cur = e.norm_squared();
        if !cur.is_finite() {
            return Err(Error::Training(format!("non-finite training loss at epoch {epoch}")));
        }
        accepted_mse.push(cur / n);
        let v = val_rmse(&model);
        history.push(EpochLog { epoch, mu: 0.0, train_rmse_pci: rmse_pci(cur, tr.t.len(), &norm), validation_rmse_pci: v });
        if va.t.is_empty() || v < best.1 {
            best = (model.clone(), v, epoch);
            fails = 0;
        } else {
            fails += 1;
            if fails >= opts.max_fail {
                stop = StopReason::ValidationStop;
                break;
            }
        }
        let g = j.tr_mul(&e) * (2.0 / n);
        if g.norm() < opts.min_grad {
            stop = StopReason::MinGradient;
            break;
        }
        if epoch == opts.max_epochs {
            break;
        }
        let p = DVector::from_vec(model.params()) - g * opts.learning_rate;
        model.set_params(p.as_slice());
    }
    finish(best.0, opts, "gradient-descent", history, stop, accepted_mse, best.2, &val_rows)
}
