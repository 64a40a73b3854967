use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slabk::ann::dataset::{metrics, split_ratio};
use slabk::ann::{
    evaluate, split, train_lm, AnnModel, DataRow, Dataset, GridLevels, NormalizationSpec, SplitLabel, TrainOptions,
    N_INPUTS,
};

fn unit_norm() -> NormalizationSpec {
    NormalizationSpec { input_min: vec![0.0; N_INPUTS], input_max: vec![1.0; N_INPUTS], output_min: 50.0, output_max: 650.0 }
}

fn random_rows(n: usize, seed: u64, target: impl Fn(&[f64; N_INPUTS]) -> f64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| {
            let x: [f64; N_INPUTS] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
            DataRow { inputs: x, k_pci: target(&x), grid: None }
        })
        .collect();
    Dataset { rows, failures: vec![] }
}

fn affine(x: &[f64; N_INPUTS]) -> f64 {
    100.0 + 80.0 * x[0] - 30.0 * x[1] + 120.0 * x[2] + 45.0 * x[3] + 200.0 * x[4] + 60.0 * x[5]
}

fn smooth(x: &[f64; N_INPUTS]) -> f64 {
    200.0 + 150.0 * (x[0] * x[4]).sqrt() + 80.0 * x[5] * x[2] - 40.0 * (3.0 * x[1]).sin()
}

#[test]
fn jacobian_matches_central_differences() {
    for seed in 0..5 {
        let m = AnnModel::seeded(N_INPUTS, 7, unit_norm(), seed);
        let u = [0.3, -0.7, 0.1, 0.9, -0.2, 0.5];
        let mut g = vec![0.0; m.n_params()];
        m.output_and_gradient(&u, &mut g);
        let p = m.params();
        for i in 0..p.len() {
            let h = 1e-6;
            let mut plus = m.clone();
            let mut minus = m.clone();
            let mut q = p.clone();
            q[i] += h;
            plus.set_params(&q);
            q[i] -= 2.0 * h;
            minus.set_params(&q);
            let fd = (plus.forward_normalized(&u) - minus.forward_normalized(&u)) / (2.0 * h);
            assert!((fd - g[i]).abs() <= 1e-6 * g[i].abs().max(1e-3), "param {i}: {fd} vs {}", g[i]);
        }
    }
}

#[test]
fn affine_target_is_fitted_almost_exactly() {
    let data = random_rows(150, 1, affine);
    let labels = vec![SplitLabel::Train; data.rows.len()];
    let opts = TrainOptions { hidden: 6, max_epochs: 2000, ..Default::default() };
    let report = train_lm(&data, &labels, unit_norm(), &opts).unwrap();
    let m = evaluate(&report.model, &data.rows).unwrap();
    assert!(m.rmse_pci < 1e-3, "rmse {}", m.rmse_pci);
}

#[test]
fn accepted_steps_never_raise_training_error() {
    let data = random_rows(200, 2, smooth);
    let labels = split(data.rows.len(), 5).unwrap();
    let opts = TrainOptions { hidden: 10, max_epochs: 150, ..Default::default() };
    let report = train_lm(&data, &labels, unit_norm(), &opts).unwrap();
    assert!(report.accepted_mse.windows(2).all(|w| w[1] <= w[0]));
    let m = evaluate(&report.model, &data.subset(&labels, SplitLabel::Validation)).unwrap();
    assert!(m.r2 > 0.95, "{m:?}");
}

#[test]
fn fixed_seed_reproduces_training_exactly() {
    let data = random_rows(120, 3, smooth);
    let labels = split(data.rows.len(), 11).unwrap();
    let opts = TrainOptions { hidden: 8, max_epochs: 40, seed: 99, ..Default::default() };
    let a = train_lm(&data, &labels, unit_norm(), &opts).unwrap();
    let b = train_lm(&data, &labels, unit_norm(), &opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.model.to_json().unwrap(), b.model.to_json().unwrap());
}

#[test]
fn empty_training_split_is_rejected() {
    let data = random_rows(10, 4, affine);
    let labels = vec![SplitLabel::Validation; 10];
    assert!(train_lm(&data, &labels, unit_norm(), &TrainOptions::default()).is_err());
}

#[test]
fn full_grid_size_and_corner() {
    let g = GridLevels::full_factorial();
    assert_eq!(g.len(), 27000);
    let corner = [0.178, 0.089, 20784e6, 34.5e6, 34.5e6, 0.0];
    let hits = (0..g.len()).filter(|&i| g.values(&g.coords(i)) == corner).count();
    assert_eq!(hits, 1);
}

#[test]
fn four_to_one_split() {
    let labels = split(27000, 1).unwrap();
    assert_eq!(labels.iter().filter(|l| **l == SplitLabel::Train).count(), 21600);
    assert_eq!(labels, split(27000, 1).unwrap());
    assert_ne!(labels, split(27000, 2).unwrap());
    assert!(split_ratio(4, 4, 1, 0).is_err());
}

#[test]
fn metric_reference_points() {
    let t = [1.0, 2.0, 3.0, 4.0];
    let perfect = metrics(&t, &t).unwrap();
    assert_eq!((perfect.rmse_pci, perfect.r2), (0.0, 1.0));
    assert_eq!(metrics(&[2.5; 4], &t).unwrap().r2, 0.0);
    assert!(metrics(&t, &[3.0; 4]).is_err());
}

#[test]
fn extrapolation_is_flagged_but_computed() {
    let mut m = AnnModel::zeros(N_INPUTS, 20, unit_norm());
    m.output_bias = 0.1;
    let p = m.forward(&[1.2, 0.5, 0.5, 0.5, 0.5, 0.5]).unwrap();
    assert_eq!(p.warnings.len(), 1);
    assert!(p.k_pci.is_finite());
    assert!(m.forward(&[1.05, 0.5, 0.5, 0.5, 0.5, 0.5]).unwrap().warnings.is_empty());
}

proptest! {
    #[test]
    fn normalization_round_trip(x in prop::array::uniform6(-1e11f64..1e11)) {
        let n = NormalizationSpec {
            input_min: vec![-2e11, -1e11, 0.0, -5e10, -1e11, -1e12],
            input_max: vec![2e11, 1.5e11, 1e11, 1e11, 1e11, 1e12],
            output_min: 10.0,
            output_max: 900.0,
        };
        let back = n.denormalize_inputs(&n.normalize_inputs(&x));
        for (a, b) in back.iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0) * 1e3);
        }
        let y = x[0].abs() % 900.0;
        prop_assert!((n.denormalize_output(n.normalize_output(y)) - y).abs() <= 1e-12 * 900.0);
    }

    #[test]
    fn hidden_activations_stay_in_open_interval(z in -6.0f64..6.0, phi in 0.1f64..5.0) {
        let a = slabk::ann::log_sigmoid(z, phi);
        prop_assert!(a > 0.0 && a < 1.0);
    }
}
