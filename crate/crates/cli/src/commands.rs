//! Subcommand implementations.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use slabk::ann::{
    dataset::exact_k, generate_dataset, read_dataset_csv, split, train_gd, train_lm, write_dataset_csv, AnnModel,
    GridLevels, SplitLabel, TrainOptions, N_INPUTS,
};
use slabk::distress::{
    accumulate_faulting, crack_fraction, differential_energy, miner_damage, total_crack, winkler_joint_deflections,
    FatigueCase, FaultingMonth,
};
use slabk::forward::{full_structure_basin, full_structure_basin_at, ForwardModel, FwdLoad, HANKEL_REL_TOL, SENSOR_OFFSETS};
use slabk::ingest::{
    expand_scenarios, fixture_text, parse_scenarios, parse_sections, MoistureLevel, ScenarioFixture, SectionFixture,
    BUILTIN_SCENARIOS, BUILTIN_SECTIONS,
};
use slabk::kvalue::{
    k_for_base_modulus, k_from_deflections_in, k_from_forward_basin, moisture_adjusted_base_modulus, AreaConstants,
    PipelineOptions,
};
use slabk::sensitivity::section_sensitivity_with;
use slabk::slab::PavementSection;
use slabk::units::{in_to_m, m_to_in, N_PER_LBF, PA_PER_PCI};
use slabk::validation::{compare_basins, FAR_SENSOR_TOL_PCT, INNER_SENSOR_TOL_PCT};

use crate::report::{config_hash, guard_outputs, num, read_bytes, read_text, write_file, CliError, CliResult, Provenance};
use crate::svg::{bar_chart, line_chart, parity_plot, Series, PALETTE};
use crate::{
    BackcalcArgs, BasinArgs, DistressArgs, ForwardKind, GenDatasetArgs, PredictArgs, SectionArgs, SensitivityArgs,
    SolverArgs, TrainArgs, Trainer, UnitSystem, ValidateArgs,
};

/// Fixture paths given on the command line.
pub struct Fixtures {
    pub sections: Option<PathBuf>,
    pub scenarios: Option<PathBuf>,
}

struct Loaded {
    sections: Vec<SectionFixture>,
    scenarios: Vec<ScenarioFixture>,
    bytes: Vec<Vec<u8>>,
}

impl Fixtures {
    fn load(&self) -> CliResult<Loaded> {
        let text = |p: &Option<PathBuf>, name: &str, builtin: &str| match p {
            Some(p) => read_text(p),
            None => Ok(fixture_text(name, builtin)?),
        };
        let s = text(&self.sections, "sections.csv", BUILTIN_SECTIONS)?;
        let c = text(&self.scenarios, "scenarios.csv", BUILTIN_SCENARIOS)?;
        Ok(Loaded { sections: parse_sections(&s)?, scenarios: parse_scenarios(&c)?, bytes: vec![s.into_bytes(), c.into_bytes()] })
    }
}

impl Loaded {
    fn section(&self, id: &str) -> CliResult<&SectionFixture> {
        self.sections.iter().find(|s| s.id() == id).ok_or_else(|| {
            let known: Vec<String> = self.sections.iter().map(SectionFixture::id).collect();
            CliError::Usage(format!("unknown section '{id}'; known: {}", known.join(", ")))
        })
    }

    /// Section with the base modulus of the requested moisture scenario and
    /// any bond override applied.
    fn resolve(&self, t: &SectionArgs, opts: &PipelineOptions) -> CliResult<(PavementSection, Vec<String>)> {
        let id = t.section.as_deref().ok_or_else(|| CliError::Usage("--section is required".into()))?;
        let f = self.section(id)?;
        let mut sec = f.to_section();
        let mut warnings = Vec::new();
        if let Some(code) = &t.moisture {
            let level = MoistureLevel::parse(code)
                .ok_or_else(|| CliError::Usage(format!("unknown moisture '{code}'; use sat, eq or eq80")))?;
            let set = expand_scenarios(f, &self.scenarios)?;
            let run = set.runs.iter().find(|r| r.level == level).expect("every level expands");
            sec.e_base = moisture_adjusted_base_modulus(&run.coeffs, &run.moisture, opts)?;
            let tag = format!("{id} {code}:");
            warnings = set.warnings.into_iter().filter(|w| w.contains(&tag)).collect();
        }
        if let Some(d) = t.delta {
            sec.delta = d;
        }
        sec.validate()?;
        Ok((sec, warnings))
    }
}

fn pipeline(s: &SolverArgs) -> CliResult<PipelineOptions> {
    if !(s.subgrade_depth >= 0.0 && s.subgrade_depth.is_finite()) {
        return Err(CliError::Usage(format!("--subgrade-depth must be >= 0, got {}", s.subgrade_depth)));
    }
    let model = match s.forward {
        ForwardKind::Layered => {
            ForwardModel::LayeredSlab { subgrade_depth: (s.subgrade_depth > 0.0).then_some(s.subgrade_depth) }
        }
        ForwardKind::Halfspace => ForwardModel::EquivalentHalfspace,
    };
    Ok(PipelineOptions { model, ..PipelineOptions::default() })
}

fn solver_line(o: &PipelineOptions) -> String {
    let model = match o.model {
        ForwardModel::LayeredSlab { subgrade_depth: Some(d) } => format!("layered slab, subgrade {d} m over rigid stratum"),
        ForwardModel::LayeredSlab { subgrade_depth: None } => "layered slab, half-space subgrade".into(),
        ForwardModel::EquivalentHalfspace => "equivalent plate on half-space".into(),
    };
    format!(
        "solver: {model}; hankel rel tol {HANKEL_REL_TOL:e}; FWD load {} N on radius {} m; base stress state {} / {} / {} kPa",
        o.load.magnitude, o.load.radius, o.stress.i1, o.stress.tau_oct, o.stress.p_a
    )
}

fn section_inputs(sec: &PavementSection) -> [f64; N_INPUTS] {
    [sec.h_s, sec.h_b, sec.e_slab, sec.e_base, sec.e_subgrade, sec.delta]
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn load_model(path: &Option<PathBuf>) -> CliResult<Option<(AnnModel, Vec<u8>)>> {
    match path {
        Some(p) => {
            let bytes = read_bytes(p)?;
            let m = AnnModel::from_json(&String::from_utf8_lossy(&bytes))?;
            Ok(Some((m, bytes)))
        }
        None => Ok(None),
    }
}

pub fn gen_dataset(a: &GenDatasetArgs) -> CliResult<()> {
    guard_outputs(&[&a.out], a.force)?;
    let opts = pipeline(&a.solver)?;
    let grid = match a.reduced {
        Some(n) => GridLevels::full_factorial().reduced(n)?,
        None => GridLevels::full_factorial(),
    };
    let ds = generate_dataset(&grid, &opts)?;
    for (c, msg) in &ds.failures {
        eprintln!("warning: grid point {c:?} skipped: {msg}");
    }
    let mut p = Provenance::new("gen-dataset", config_hash("gen-dataset", a, &[]));
    p.extra.push(solver_line(&opts));
    p.extra.push(format!("rows: {}; failed: {}", ds.rows.len(), ds.failures.len()));
    let text = write_dataset_csv(&ds, &p.lines("inputs m and Pa, delta dimensionless; k_pci lbf/in^3"))?;
    write_file(&a.out, &text)?;
    eprintln!("wrote {} rows to {}", ds.rows.len(), a.out.display());
    Ok(())
}

pub fn train(a: &TrainArgs) -> CliResult<()> {
    let log = a.log.clone().unwrap_or_else(|| sibling(&a.out, "log.csv"));
    let plot = a.plot.clone().unwrap_or_else(|| sibling(&a.out, "fit.svg"));
    guard_outputs(&[&a.out, &log, &plot], a.force)?;
    if a.hidden == 0 {
        return Err(CliError::Usage("--hidden must be at least 1".into()));
    }
    let bytes = read_bytes(&a.data)?;
    let ds = read_dataset_csv(&String::from_utf8_lossy(&bytes))?;
    let labels = split(ds.rows.len(), a.seed)?;
    let norm = ds.observed_normalization()?;
    let opts = TrainOptions { hidden: a.hidden, seed: a.seed, max_epochs: a.max_epochs, ..TrainOptions::default() };
    let rep = match a.trainer {
        Trainer::Lm => train_lm(&ds, &labels, norm, &opts)?,
        Trainer::Gd => train_gd(&ds, &labels, norm, &opts)?,
    };
    let m = &rep.model;
    write_file(&a.out, &(m.to_json()? + "\n"))?;

    let mut p = Provenance::new("train", config_hash("train", a, &[bytes]));
    p.extra.push(format!(
        "topology: {}-{}-1; trainer: {}; stop: {}; best epoch: {}",
        m.inputs, m.hidden, m.metadata.trainer, m.metadata.stop_reason, rep.best_epoch
    ));
    p.extra.push(format!(
        "train rmse {} pci; validation rmse {} pci; validation r2 {}",
        m.metadata.train_rmse_pci, m.metadata.validation_rmse_pci, m.metadata.validation_r2
    ));
    let rows: Vec<Vec<String>> = rep
        .history
        .iter()
        .map(|h| vec![h.epoch.to_string(), num(h.mu), num(h.train_rmse_pci), num(h.validation_rmse_pci)])
        .collect();
    write_file(&log, &p.csv("mu dimensionless; rmse in pci", &["epoch", "mu", "train_rmse_pci", "validation_rmse_pci"], &rows)?)?;

    let pts = |which: SplitLabel| -> Vec<(f64, f64)> {
        ds.rows.iter().zip(&labels).filter(|(_, l)| **l == which).map(|(r, _)| (r.k_pci, m.predict(&r.inputs))).collect()
    };
    let title = format!("{}-{}-1 surrogate, validation R^2 = {:.4}", m.inputs, m.hidden, m.metadata.validation_r2);
    let groups = [("training", PALETTE[0], pts(SplitLabel::Train)), ("validation", PALETTE[1], pts(SplitLabel::Validation))];
    write_file(&plot, &parity_plot(&title, "k (pci)", &groups))?;
    println!(
        "{}-{}-1 {}: stop '{}' at epoch {} (best {}); train RMSE {:.3} pci, validation RMSE {:.3} pci, validation R^2 {:.5}",
        m.inputs,
        m.hidden,
        m.metadata.trainer,
        m.metadata.stop_reason,
        m.metadata.epochs,
        rep.best_epoch,
        m.metadata.train_rmse_pci,
        m.metadata.validation_rmse_pci,
        m.metadata.validation_r2
    );
    Ok(())
}

pub fn predict_k(a: &PredictArgs, fx: &Fixtures) -> CliResult<()> {
    if let Some(p) = &a.out {
        guard_outputs(&[p], a.force)?;
    }
    let opts = pipeline(&a.solver)?;
    let fixtures = fx.load()?;
    let mut inputs_bytes = fixtures.bytes.clone();
    let (x, section, mut warnings) = match &a.inputs {
        Some(v) if v.len() == N_INPUTS => (std::array::from_fn(|i| v[i]), None, Vec::new()),
        Some(v) => return Err(CliError::Usage(format!("--inputs needs {N_INPUTS} values, got {}", v.len()))),
        None => {
            let (sec, w) = fixtures.resolve(&a.target, &opts)?;
            (section_inputs(&sec), Some(sec), w)
        }
    };
    let model = load_model(&a.model)?;
    let (source, k_pci) = match &model {
        Some((m, bytes)) => {
            inputs_bytes.push(bytes.clone());
            let pred = m.forward(&x)?;
            warnings.extend(pred.warnings.into_iter().map(|w| format!("extrapolation: {w}")));
            ("surrogate", pred.k_pci)
        }
        None => match &section {
            Some(sec) => ("exact", k_for_base_modulus(sec, sec.e_base, &opts)?.k_pci),
            None => ("exact", exact_k(&x, &opts)?),
        },
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let mut p = Provenance::new("predict-k", config_hash("predict-k", a, &inputs_bytes));
    if model.is_none() {
        p.extra.push(solver_line(&opts));
    }
    let mut row = vec![
        source.to_string(),
        a.target.section.clone().unwrap_or_default(),
        a.target.moisture.clone().unwrap_or_default(),
    ];
    row.extend(x.iter().map(|v| num(*v)));
    row.extend([num(k_pci), num(k_pci * PA_PER_PCI), warnings.join("; ")]);
    let header = [
        "source", "section_id", "moisture", "h_slab_m", "h_base_m", "e_slab_pa", "e_base_pa", "e_subgrade_pa", "delta",
        "k_pci", "k_pa_per_m", "warnings",
    ];
    emit(a.out.as_deref(), &p.csv("m, Pa; k in pci and Pa/m", &header, &[row])?)
}

pub fn validate(a: &ValidateArgs, fx: &Fixtures) -> CliResult<()> {
    let opts = pipeline(&a.solver)?;
    let fixtures = fx.load()?;
    let summary = a.out_dir.join("validation.csv");
    let plots: Vec<PathBuf> = fixtures.sections.iter().map(|s| a.out_dir.join(format!("basin_{}.svg", s.id()))).collect();
    let mut all: Vec<&Path> = vec![&summary];
    all.extend(plots.iter().map(PathBuf::as_path));
    guard_outputs(&all, a.force)?;
    let model = load_model(&a.model)?;
    let mut inputs = fixtures.bytes.clone();
    if let Some((_, b)) = &model {
        inputs.push(b.clone());
    }
    let mut rows = Vec::new();
    let mut n_pass = 0;
    for (f, plot) in fixtures.sections.iter().zip(&plots) {
        let sec = f.to_section();
        let k = match &model {
            Some((m, _)) => Some(m.predict(&section_inputs(&sec))),
            None => None,
        };
        let c = compare_basins(&sec, k, &opts)?;
        let ok = c.passes();
        n_pass += ok as usize;
        println!(
            "{} {}: k = {:.1} pci, deviation {} %",
            f.id(),
            if ok { "PASS" } else { "FAIL" },
            c.k_pci,
            c.deviation_pct.iter().map(|d| format!("{d:+.2}")).collect::<Vec<_>>().join(" / ")
        );
        let n = c.deviation_pct.len();
        for i in 0..n {
            let tol = if i + 1 == n { FAR_SENSOR_TOL_PCT } else { INNER_SENSOR_TOL_PCT };
            let dev = c.deviation_pct[i];
            rows.push(vec![
                f.id(),
                i.to_string(),
                num(c.full.offsets[i]),
                num(c.full.deflections[i]),
                num(c.equivalent.deflections[i]),
                num(dev),
                num(tol),
                (dev.abs() <= tol).to_string(),
                num(c.k_pci),
                num(c.h_eq),
            ]);
        }
        let series = |name: &str, color, b: &slabk::forward::DeflectionBasin, dashed| Series {
            name: name.into(),
            color,
            points: b.offsets.iter().zip(&b.deflections).map(|(r, w)| (*r, w * 1e3)).collect(),
            dashed,
        };
        let svg = line_chart(
            &format!("Section {}: full structure vs equivalent slab (k = {:.0} pci)", f.id(), c.k_pci),
            "offset (m)",
            "deflection (mm)",
            &[series("full structure", PALETTE[0], &c.full, false), series("equivalent slab", PALETTE[1], &c.equivalent, true)],
        );
        write_file(plot, &svg)?;
    }
    let mut p = Provenance::new("validate", config_hash("validate", a, &inputs));
    p.extra.push(solver_line(&opts));
    p.extra.push(format!("k source: {}", if model.is_some() { "surrogate" } else { "exact chain" }));
    let header = [
        "section_id", "sensor", "offset_m", "full_m", "equivalent_m", "deviation_pct", "tolerance_pct", "pass", "k_pci",
        "h_eq_m",
    ];
    write_file(&summary, &p.csv("m; k in pci; deviations in percent", &header, &rows)?)?;
    println!("{n_pass} of {} sections within tolerance", fixtures.sections.len());
    Ok(())
}

pub fn sensitivity(a: &SensitivityArgs, fx: &Fixtures) -> CliResult<()> {
    let opts = pipeline(&a.solver)?;
    let fixtures = fx.load()?;
    let csv_path = a.out_dir.join("sensitivity.csv");
    let bond_svg = a.out_dir.join("bond.svg");
    let moist_svg = a.out_dir.join("moisture.svg");
    guard_outputs(&[&csv_path, &bond_svg, &moist_svg], a.force)?;
    let model = load_model(&a.model)?;
    let mut inputs = fixtures.bytes.clone();
    if let Some((_, b)) = &model {
        inputs.push(b.clone());
    }
    let predict = |sec: &PavementSection, e_base: f64| -> slabk::Result<f64> {
        let sec = sec.with_base_modulus(e_base);
        match &model {
            Some((m, _)) => Ok(m.predict(&section_inputs(&sec))),
            None => Ok(k_for_base_modulus(&sec, e_base, &opts)?.k_pci),
        }
    };
    let mut rows = Vec::new();
    let mut warnings = BTreeSet::new();
    let mut results = Vec::new();
    for f in &fixtures.sections {
        let s = section_sensitivity_with(f, &fixtures.scenarios, &opts, predict)?;
        let e_base = |level: MoistureLevel, delta: f64| {
            s.runs.iter().find(|r| r.level == level && r.delta == delta).map_or(f64::NAN, |r| r.e_base_pa)
        };
        let bonds = [("none", 0.0), ("partial", s.partial_delta), ("full", 1.0)];
        for (i, (case, d)) in bonds.iter().enumerate() {
            let change = if i == 0 { 0.0 } else { s.bond_change[i - 1] };
            let eb = e_base(MoistureLevel::Equilibrium, *d);
            rows.push(vec![s.section_id.clone(), "bond".into(), (*case).into(), "eq".into(), num(*d), num(eb), num(s.k_bond[i]), num(change)]);
        }
        for (i, level) in MoistureLevel::ALL.iter().enumerate() {
            let change = if i == 0 { 0.0 } else { s.moisture_change[i - 1] };
            let eb = e_base(*level, s.partial_delta);
            rows.push(vec![
                s.section_id.clone(),
                "moisture".into(),
                level.code().into(),
                level.code().into(),
                num(s.partial_delta),
                num(eb),
                num(s.k_moisture[i]),
                num(change),
            ]);
        }
        println!(
            "{}: bond change {:+.2} % / {:+.2} %, moisture change {:+.2} % / {:+.2} %",
            s.section_id, s.bond_change[0], s.bond_change[1], s.moisture_change[0], s.moisture_change[1]
        );
        warnings.extend(s.warnings.iter().cloned());
        results.push(s);
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let mut p = Provenance::new("sensitivity", config_hash("sensitivity", a, &inputs));
    p.extra.push(solver_line(&opts));
    p.extra.push(format!("k source: {}", if model.is_some() { "surrogate" } else { "exact chain" }));
    p.extra.extend(warnings.iter().map(|w| format!("warning: {w}")));
    let header = ["section_id", "mode", "case", "moisture", "delta", "e_base_pa", "k_pci", "change_pct"];
    write_file(&csv_path, &p.csv("Pa; k in pci; change in percent of the mode baseline", &header, &rows)?)?;
    let cats: Vec<String> = results.iter().map(|s| s.section_id.clone()).collect();
    let col = |f: &dyn Fn(&slabk::sensitivity::SectionSensitivity) -> f64| results.iter().map(f).collect::<Vec<_>>();
    let bond = bar_chart(
        "k change from no bond, equilibrium moisture",
        "k change (%)",
        &cats,
        &[("partial bond", PALETTE[0], col(&|s| s.bond_change[0])), ("full bond", PALETTE[1], col(&|s| s.bond_change[1]))],
    );
    let moist = bar_chart(
        "k change from saturated base, section bond",
        "k change (%)",
        &cats,
        &[
            ("equilibrium", PALETTE[0], col(&|s| s.moisture_change[0])),
            ("80% equilibrium", PALETTE[1], col(&|s| s.moisture_change[1])),
        ],
    );
    write_file(&bond_svg, &bond)?;
    write_file(&moist_svg, &moist)?;
    Ok(())
}

fn csv_records(text: &str, header: &[&str]) -> CliResult<Vec<csv::StringRecord>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let got: Vec<String> = rdr.headers().map_err(slabk::Error::from)?.iter().map(str::to_owned).collect();
    if got != header {
        return Err(slabk::Error::Parse { row: 0, column: "header".into(), msg: format!("expected {header:?}, found {got:?}") }.into());
    }
    let mut out = Vec::new();
    for (i, r) in rdr.records().enumerate() {
        out.push(r.map_err(|e| slabk::Error::Parse { row: i + 1, column: "-".into(), msg: e.to_string() })?);
    }
    Ok(out)
}

fn field(rec: &csv::StringRecord, header: &[&str], row: usize, col: &str) -> CliResult<f64> {
    let i = header.iter().position(|h| *h == col).expect("known column");
    let s = rec.get(i).unwrap_or("");
    s.parse().map_err(|_| slabk::Error::Parse { row, column: col.into(), msg: format!("'{s}' is not a number") }.into())
}

const CASE_HEADER: [&str; 5] = ["label", "position", "applied_n", "stress_psi", "modulus_rupture_psi"];
const MONTH_HEADER: [&str; 3] = ["month", "faultmax_in", "de"];

pub fn distress(a: &DistressArgs, fx: &Fixtures) -> CliResult<()> {
    guard_outputs(&[&a.out], a.force)?;
    let opts = pipeline(&a.solver)?;
    let case_bytes = read_bytes(&a.cases)?;
    let mut inputs = vec![case_bytes.clone()];
    let (mut bottom, mut top) = (Vec::new(), Vec::new());
    for (i, r) in csv_records(&String::from_utf8_lossy(&case_bytes), &CASE_HEADER)?.iter().enumerate() {
        let c = FatigueCase {
            label: r.get(0).unwrap_or("").to_string(),
            applied_n: field(r, &CASE_HEADER, i + 1, "applied_n")?,
            stress: field(r, &CASE_HEADER, i + 1, "stress_psi")?,
            modulus_rupture: field(r, &CASE_HEADER, i + 1, "modulus_rupture_psi")?,
        };
        match r.get(1).unwrap_or("") {
            "bottom" => bottom.push(c),
            "top" => top.push(c),
            other => {
                return Err(slabk::Error::Parse {
                    row: i + 1,
                    column: "position".into(),
                    msg: format!("'{other}' is not bottom or top"),
                }
                .into())
            }
        }
    }
    let fd_b = miner_damage(&bottom, a.c1, a.c2)?;
    let fd_t = miner_damage(&top, a.c1, a.c2)?;
    let crk_b = crack_fraction(fd_b)?;
    let crk_t = crack_fraction(fd_t)?;
    let tcrack = total_crack(crk_b, crk_t)?;
    let row = |q: &str, i: String, v: f64, unit: &str| vec![q.to_string(), i, num(v), unit.to_string()];
    let mut rows = vec![
        row("fd_bottom", String::new(), fd_b, "-"),
        row("fd_top", String::new(), fd_t, "-"),
        row("crk_bottom", String::new(), crk_b, "fraction"),
        row("crk_top", String::new(), crk_t, "fraction"),
        row("tcrack", String::new(), tcrack, "percent"),
    ];
    let mut extra = Vec::new();
    if let Some(path) = &a.faulting {
        let bytes = read_bytes(path)?;
        let recs = csv_records(&String::from_utf8_lossy(&bytes), &MONTH_HEADER)?;
        inputs.push(bytes);
        let needs_de = recs.iter().any(|r| r.get(2).unwrap_or("").is_empty());
        let joint_de = if needs_de {
            let id = a.section.as_deref().ok_or_else(|| CliError::Usage("blank de cells need --section".into()))?;
            let fixtures = fx.load()?;
            inputs.extend(fixtures.bytes.iter().cloned());
            let sec = fixtures.section(id)?.to_section();
            let k = match a.k_pci {
                Some(k) => k,
                None => k_for_base_modulus(&sec, sec.e_base, &opts)?.k_pci,
            };
            let load = FwdLoad { magnitude: a.wheel_load_lbf * N_PER_LBF, radius: in_to_m(a.contact_radius_in) };
            let j = winkler_joint_deflections(&sec, k, &load, a.lte)?;
            let de = differential_energy(&j)?;
            extra.push(format!(
                "joint deflections: interior Winkler deflection of section {id} under {} lbf, unloaded side = LTE x loaded",
                a.wheel_load_lbf
            ));
            rows.push(row("joint_loaded", String::new(), j.loaded, "in"));
            rows.push(row("joint_unloaded", String::new(), j.unloaded, "in"));
            rows.push(row("joint_k", String::new(), j.k, "pci"));
            rows.push(row("joint_de", String::new(), de, "lbf/in"));
            Some(de)
        } else {
            None
        };
        let mut months = Vec::new();
        let mut labels = Vec::new();
        for (i, r) in recs.iter().enumerate() {
            let de = match r.get(2).unwrap_or("") {
                "" => joint_de.expect("computed when any cell is blank"),
                _ => field(r, &MONTH_HEADER, i + 1, "de")?,
            };
            months.push(FaultingMonth { faultmax: field(r, &MONTH_HEADER, i + 1, "faultmax_in")?, de });
            labels.push(r.get(0).unwrap_or("").to_string());
        }
        let series = accumulate_faulting(&months, a.c34)?;
        for &m in &series.clamped_months {
            let w = format!("month {} increment clamped at FAULTMAX", labels[m]);
            eprintln!("warning: {w}");
            extra.push(format!("warning: {w}"));
        }
        for (i, (m, f)) in months.iter().zip(&series.fault).enumerate() {
            rows.push(row("faultmax", labels[i].clone(), m.faultmax, "in"));
            rows.push(row("de", labels[i].clone(), m.de, "lbf/in"));
            rows.push(row("fault", labels[i].clone(), *f, "in"));
        }
    }
    let mut p = Provenance::new("distress", config_hash("distress", a, &inputs));
    p.extra.push(format!("constants: C1 = {}, C2 = {}, C34 = {} (MEPDG national defaults unless overridden)", a.c1, a.c2, a.c34));
    p.extra.extend(extra);
    write_file(&a.out, &p.csv("see unit column", &["quantity", "index", "value", "unit"], &rows)?)?;
    println!("FD bottom {fd_b:.6}, FD top {fd_t:.6}, TCRACK {tcrack:.3} %");
    Ok(())
}

const BATCH_HEADER: [&str; 3] = ["section_id", "moisture", "delta"];

pub fn backcalc(a: &BackcalcArgs, fx: &Fixtures) -> CliResult<()> {
    if let Some(p) = &a.out {
        guard_outputs(&[p], a.force)?;
    }
    let opts = pipeline(&a.solver)?;
    let mut rows = Vec::new();
    let mut inputs = Vec::new();
    let mut p_extra = Vec::new();
    let kv_cols = |k: &slabk::kvalue::KValue| vec![num(k.basin_area_in), num(k.l_e_in), num(k.d_star), num(k.k_pci), num(k.k_pa_per_m)];
    if let Some(d) = &a.deflections_in {
        if d.len() != 4 {
            return Err(CliError::Usage(format!("--deflections-in needs 4 values, got {}", d.len())));
        }
        let d: [f64; 4] = std::array::from_fn(|i| d[i]);
        let k = k_from_deflections_in(&d, a.load_lbf, &AreaConstants::default())?;
        let mut r = vec!["measured".into(), String::new(), String::new(), String::new(), String::new()];
        r.extend(d.iter().map(|v| num(*v)));
        r.push(num(a.load_lbf));
        r.extend(kv_cols(&k));
        rows.push(r);
    }
    if let Some(path) = &a.batch {
        let bytes = read_bytes(path)?;
        let recs = csv_records(&String::from_utf8_lossy(&bytes), &BATCH_HEADER)?;
        inputs.push(bytes);
        let fixtures = fx.load()?;
        inputs.extend(fixtures.bytes.iter().cloned());
        p_extra.push(solver_line(&opts));
        for (i, r) in recs.iter().enumerate() {
            let delta = match r.get(2).unwrap_or("") {
                "" => None,
                _ => Some(field(r, &BATCH_HEADER, i + 1, "delta")?),
            };
            let moisture = Some(r.get(1).unwrap_or("").to_string()).filter(|m| !m.is_empty());
            let t = SectionArgs { section: r.get(0).map(str::to_string), moisture: moisture.clone(), delta };
            let (sec, warnings) = fixtures.resolve(&t, &opts)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            let basin = full_structure_basin(&sec, sec.e_base, &opts.load, &opts.model)?;
            let k = k_from_forward_basin(&basin, &opts.load)?;
            let scale = slabk::kvalue::AREA_LOAD_LBF / (opts.load.magnitude / N_PER_LBF);
            let mut row = vec!["computed".into(), t.section.unwrap_or_default(), moisture.unwrap_or_default(), num(sec.delta), num(sec.e_base)];
            row.extend(basin.deflections.iter().map(|w| num(m_to_in(w * scale))));
            row.push(num(slabk::kvalue::AREA_LOAD_LBF));
            row.extend(kv_cols(&k));
            rows.push(row);
        }
    }
    let mut p = Provenance::new("backcalc", config_hash("backcalc", a, &inputs));
    p.extra = p_extra;
    let header = [
        "source", "section_id", "moisture", "delta", "e_base_pa", "d0_in", "d1_in", "d2_in", "d3_in", "load_lbf",
        "basin_area_in", "l_e_in", "d_star", "k_pci", "k_pa_per_m",
    ];
    emit(a.out.as_deref(), &p.csv("deflections in inches at the load_lbf level; Pa; k in pci and Pa/m", &header, &rows)?)
}

pub fn basin(a: &BasinArgs, fx: &Fixtures) -> CliResult<()> {
    if let Some(p) = &a.out {
        guard_outputs(&[p], a.force)?;
    }
    let mut opts = pipeline(&a.solver)?;
    opts.load = FwdLoad { magnitude: a.load_n, radius: a.radius_m };
    opts.load.validate()?;
    let fixtures = fx.load()?;
    let (sec, warnings) = fixtures.resolve(&a.target, &opts)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let offsets = a.offsets.clone().unwrap_or_else(|| SENSOR_OFFSETS.to_vec());
    let b = full_structure_basin_at(&sec, sec.e_base, &opts.load, &opts.model, &offsets)?;
    let (header, units, rows): ([&str; 2], &str, Vec<Vec<String>>) = match a.units {
        UnitSystem::Si => (
            ["offset_m", "deflection_m"],
            "m",
            b.offsets.iter().zip(&b.deflections).map(|(r, w)| vec![num(*r), num(*w)]).collect(),
        ),
        UnitSystem::Us => (
            ["offset_in", "deflection_in"],
            "in",
            b.offsets.iter().zip(&b.deflections).map(|(r, w)| vec![num(m_to_in(*r)), num(m_to_in(*w))]).collect(),
        ),
    };
    let mut p = Provenance::new("basin", config_hash("basin", a, &fixtures.bytes));
    p.extra.push(solver_line(&opts));
    emit(a.out.as_deref(), &p.csv(units, &header, &rows)?)
}
