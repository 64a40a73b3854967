//! Factorial training grid, dataset generation, split and metrics.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AnnModel, NormalizationSpec, INPUT_NAMES, N_INPUTS};
use crate::error::{Error, Result};
use crate::ingest::{DEFAULT_NU_BASE, DEFAULT_NU_SLAB, DEFAULT_NU_SUBGRADE};
use crate::kvalue::{k_for_base_modulus, PipelineOptions};
use crate::slab::PavementSection;
use crate::units::{mm_to_m, mpa_to_pa};

/// Levels of each of the six inputs, SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridLevels {
    pub levels: [Vec<f64>; N_INPUTS],
}

impl GridLevels {
    /// Full factorial design (27000 cases).
    pub fn full_factorial() -> Self {
        let mm = |v: &[f64]| v.iter().map(|x| mm_to_m(*x)).collect::<Vec<_>>();
        let mpa = |v: &[f64]| v.iter().map(|x| mpa_to_pa(*x)).collect::<Vec<_>>();
        GridLevels {
            levels: [
                mm(&[178.0, 216.0, 254.0, 292.0, 330.0]),
                mm(&[89.0, 127.0, 165.1, 203.2, 254.0]),
                mpa(&[20784.0, 31026.0, 41368.0, 51710.0, 62052.0, 75842.0]),
                mpa(&[34.5, 690.0, 1724.0, 3447.0, 5171.0, 6895.0]),
                mpa(&[34.5, 69.0, 138.0, 276.0, 414.0, 551.0]),
                vec![0.0, 0.25, 0.5, 0.75, 1.0],
            ],
        }
    }

    /// `n` evenly spaced sub-levels of each input, ends included.
    pub fn reduced(&self, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input("a reduced grid needs at least 2 levels per input".into()));
        }
        let mut out = self.clone();
        for (dst, src) in out.levels.iter_mut().zip(&self.levels) {
            if n > src.len() {
                return Err(Error::Input(format!("cannot pick {n} levels from {}", src.len())));
            }
            *dst = (0..n)
                .map(|j| {
                    let idx = ((src.len() - 1) as f64 * j as f64 / (n - 1) as f64).round() as usize;
                    src[idx]
                })
                .collect();
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid coordinates of the row at `index`; the last input varies fastest.
    pub fn coords(&self, mut index: usize) -> [usize; N_INPUTS] {
        let mut c = [0; N_INPUTS];
        for d in (0..N_INPUTS).rev() {
            let n = self.levels[d].len();
            c[d] = index % n;
            index /= n;
        }
        c
    }

    pub fn values(&self, coords: &[usize; N_INPUTS]) -> [f64; N_INPUTS] {
        std::array::from_fn(|d| self.levels[d][coords[d]])
    }

    /// Normalization bounds spanning the grid.
    pub fn input_bounds(&self) -> (Vec<f64>, Vec<f64>) {
        let lo = self.levels.iter().map(|l| l.iter().cloned().fold(f64::INFINITY, f64::min)).collect();
        let hi = self.levels.iter().map(|l| l.iter().cloned().fold(f64::NEG_INFINITY, f64::max)).collect();
        (lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitLabel {
    Train,
    Validation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataRow {
    pub inputs: [f64; N_INPUTS],
    pub k_pci: f64,
    /// grid coordinates the row came from, if any
    pub grid: Option<[usize; N_INPUTS]>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Dataset {
    pub rows: Vec<DataRow>,
    /// (grid coordinates, error message) of rows whose solve failed
    pub failures: Vec<([usize; N_INPUTS], String)>,
}

/// Pavement section for one grid point with the default Poisson ratios.
pub fn section_from_inputs(x: &[f64; N_INPUTS]) -> PavementSection {
    PavementSection {
        h_s: x[0],
        h_b: x[1],
        e_slab: x[2],
        e_base: x[3],
        e_subgrade: x[4],
        nu_slab: DEFAULT_NU_SLAB,
        nu_base: DEFAULT_NU_BASE,
        nu_subgrade: DEFAULT_NU_SUBGRADE,
        delta: x[5],
    }
}

/// Exact-chain k (pci) for one input vector.
pub fn exact_k(x: &[f64; N_INPUTS], opts: &PipelineOptions) -> Result<f64> {
    let sec = section_from_inputs(x);
    Ok(k_for_base_modulus(&sec, sec.e_base, opts)?.k_pci)
}

/// Runs the forward chain at every grid point.
///
/// Rows are solved in parallel and assembled in grid order. Failed rows are
/// recorded and skipped; more than 1 % failures is an error.
pub fn generate_dataset(grid: &GridLevels, opts: &PipelineOptions) -> Result<Dataset> {
    let results: Vec<([usize; N_INPUTS], Result<DataRow>)> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let c = grid.coords(i);
            let x = grid.values(&c);
            (c, exact_k(&x, opts).map(|k| DataRow { inputs: x, k_pci: k, grid: Some(c) }))
        })
        .collect();
    let mut ds = Dataset::default();
    for (c, r) in results {
        match r {
            Ok(row) => ds.rows.push(row),
            Err(e) => ds.failures.push((c, e.to_string())),
        }
    }
    if ds.failures.len() * 100 > grid.len() {
        return Err(Error::Solver {
            msg: format!("{} of {} dataset rows failed; first: {}", ds.failures.len(), grid.len(), ds.failures[0].1),
            residual: ds.failures.len() as f64,
        });
    }
    Ok(ds)
}

impl Dataset {
    /// Normalization from the given input bounds and the target range.
    pub fn normalization(&self, input_min: Vec<f64>, input_max: Vec<f64>) -> Result<NormalizationSpec> {
        let (lo, hi) = self
            .rows
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r.k_pci), hi.max(r.k_pci)));
        let n = NormalizationSpec { input_min, input_max, output_min: lo, output_max: hi };
        n.validate()?;
        Ok(n)
    }

    /// Normalization spanning the observed inputs and target.
    pub fn observed_normalization(&self) -> Result<NormalizationSpec> {
        let mut lo = vec![f64::INFINITY; N_INPUTS];
        let mut hi = vec![f64::NEG_INFINITY; N_INPUTS];
        for r in &self.rows {
            for d in 0..N_INPUTS {
                lo[d] = lo[d].min(r.inputs[d]);
                hi[d] = hi[d].max(r.inputs[d]);
            }
        }
        self.normalization(lo, hi)
    }

    pub fn subset(&self, labels: &[SplitLabel], which: SplitLabel) -> Vec<DataRow> {
        self.rows.iter().zip(labels).filter(|(_, l)| **l == which).map(|(r, _)| r.clone()).collect()
    }
}

/// Seeded 4:1 train/validation labels.
pub fn split(n_rows: usize, seed: u64) -> Result<Vec<SplitLabel>> {
    split_ratio(n_rows, 4, 1, seed)
}

pub fn split_ratio(n_rows: usize, train: usize, validation: usize, seed: u64) -> Result<Vec<SplitLabel>> {
    if n_rows < train + validation {
        return Err(Error::Input(format!("need at least {} rows to split, got {n_rows}", train + validation)));
    }
    let n_train = (n_rows as f64 * train as f64 / (train + validation) as f64).round() as usize;
    let mut idx: Vec<usize> = (0..n_rows).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut labels = vec![SplitLabel::Validation; n_rows];
    for &i in &idx[..n_train] {
        labels[i] = SplitLabel::Train;
    }
    Ok(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub rmse_pci: f64,
    pub r2: f64,
}

/// RMSE and R^2 of predictions against targets.
pub fn metrics(pred: &[f64], target: &[f64]) -> Result<Metrics> {
    if pred.is_empty() || pred.len() != target.len() {
        return Err(Error::Input("metrics need equal, nonempty prediction and target lists".into()));
    }
    let n = target.len() as f64;
    let mean = target.iter().sum::<f64>() / n;
    let ss_tot: f64 = target.iter().map(|t| (t - mean).powi(2)).sum();
    let ss_res: f64 = pred.iter().zip(target).map(|(p, t)| (p - t).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(Error::Input("R^2 is undefined for zero-variance targets".into()));
    }
    Ok(Metrics { rmse_pci: (ss_res / n).sqrt(), r2: 1.0 - ss_res / ss_tot })
}

/// RMSE (pci) and R^2 of the model on the rows.
pub fn evaluate(model: &AnnModel, rows: &[DataRow]) -> Result<Metrics> {
    let pred: Vec<f64> = rows.iter().map(|r| model.predict(&r.inputs)).collect();
    let target: Vec<f64> = rows.iter().map(|r| r.k_pci).collect();
    metrics(&pred, &target)
}

/// Column names of the dataset CSV.
pub fn dataset_header() -> Vec<&'static str> {
    let mut h = INPUT_NAMES.to_vec();
    h.push("k_pci");
    h
}

/// Dataset CSV text: `#` provenance lines, the header, one row per case.
pub fn write_dataset_csv(ds: &Dataset, provenance: &[String]) -> Result<String> {
    let mut out = String::new();
    for line in provenance {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(dataset_header())?;
    for r in &ds.rows {
        let mut rec: Vec<String> = r.inputs.iter().map(f64::to_string).collect();
        rec.push(r.k_pci.to_string());
        w.write_record(&rec)?;
    }
    let body = w.into_inner().map_err(|e| Error::Input(e.to_string()))?;
    out.push_str(&String::from_utf8(body).map_err(|e| Error::Input(e.to_string()))?);
    Ok(out)
}

/// Parses dataset CSV text; `#` lines are skipped.
pub fn read_dataset_csv(text: &str) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != dataset_header() {
        return Err(Error::Parse { row: 0, column: String::new(), msg: format!("expected header {:?}", dataset_header()) });
    }
    let mut ds = Dataset::default();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let mut vals = [0.0; N_INPUTS + 1];
        for (c, v) in vals.iter_mut().enumerate() {
            let cell = rec.get(c).unwrap_or("");
            *v = cell.trim().parse().map_err(|_| Error::Parse {
                row: i + 1,
                column: header[c].clone(),
                msg: format!("'{cell}' is not a number"),
            })?;
        }
        ds.rows.push(DataRow { inputs: std::array::from_fn(|d| vals[d]), k_pci: vals[N_INPUTS], grid: None });
    }
    if ds.rows.is_empty() {
        return Err(Error::Input("dataset has no rows".into()));
    }
    Ok(ds)
}
