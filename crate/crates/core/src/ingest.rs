//! LTPP section and moisture-scenario fixtures.
//!
//! Both files are CSV with a version line (`# slabk-sections v1`,
//! `# slabk-scenarios v1`), further `#` comment lines stating units, and a
//! header row. Values are kept in US customary units and converted to SI by
//! [`SectionFixture::to_section`].

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrostatics::{swcc_saturation, MoistureState, SwccParams};
use crate::resilient_modulus::MrCoefficients;
use crate::slab::PavementSection;
use crate::units::{in_to_m, kpa_to_cm, psi_to_pa};

pub const SECTIONS_VERSION: &str = "# slabk-sections v1";
pub const SCENARIOS_VERSION: &str = "# slabk-scenarios v1";
pub const BUILTIN_SECTIONS: &str = include_str!("../fixtures/sections.csv");
pub const BUILTIN_SCENARIOS: &str = include_str!("../fixtures/scenarios.csv");
/// Environment variable naming a directory with replacement fixture files.
pub const FIXTURES_ENV: &str = "SLABK_FIXTURES";

pub const DEFAULT_NU_SLAB: f64 = 0.15;
pub const DEFAULT_NU_BASE: f64 = 0.35;
pub const DEFAULT_NU_SUBGRADE: f64 = 0.40;

/// Relative tolerance of the SWCC cross-check in [`expand_scenarios`].
pub const CROSS_CHECK_TOL: f64 = 0.02;

const SECTION_HEADER: [&str; 13] = [
    "climate_zone",
    "state",
    "state_code",
    "shrp_id",
    "slab_thickness_in",
    "base_thickness_in",
    "slab_modulus_psi",
    "base_modulus_psi",
    "subgrade_modulus_psi",
    "delta",
    "nu_slab",
    "nu_base",
    "nu_subgrade",
];

const SCENARIO_HEADER: [&str; 16] = [
    "state_code",
    "shrp_id",
    "moisture",
    "delta",
    "a_f",
    "b_f",
    "c_f",
    "h_r",
    "theta",
    "saturation_pct",
    "suction_kpa",
    "f",
    "k1",
    "k2",
    "k3",
    "mr_kpa",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionFixture {
    pub climate_zone: String,
    pub state: String,
    pub state_code: String,
    pub shrp_id: String,
    pub slab_thickness_in: f64,
    pub base_thickness_in: f64,
    pub slab_modulus_psi: f64,
    pub base_modulus_psi: f64,
    pub subgrade_modulus_psi: f64,
    pub delta: f64,
    pub nu_slab: Option<f64>,
    pub nu_base: Option<f64>,
    pub nu_subgrade: Option<f64>,
}

impl SectionFixture {
    /// `state_code-shrp_id`, e.g. `27-4034`.
    pub fn id(&self) -> String {
        format!("{}-{}", self.state_code, self.shrp_id)
    }

    pub fn to_section(&self) -> PavementSection {
        PavementSection {
            h_s: in_to_m(self.slab_thickness_in),
            h_b: in_to_m(self.base_thickness_in),
            e_slab: psi_to_pa(self.slab_modulus_psi),
            e_base: psi_to_pa(self.base_modulus_psi),
            e_subgrade: psi_to_pa(self.subgrade_modulus_psi),
            nu_slab: self.nu_slab.unwrap_or(DEFAULT_NU_SLAB),
            nu_base: self.nu_base.unwrap_or(DEFAULT_NU_BASE),
            nu_subgrade: self.nu_subgrade.unwrap_or(DEFAULT_NU_SUBGRADE),
            delta: self.delta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoistureLevel {
    Saturated,
    Equilibrium,
    Equilibrium80,
}

impl MoistureLevel {
    pub const ALL: [MoistureLevel; 3] = [MoistureLevel::Saturated, MoistureLevel::Equilibrium, MoistureLevel::Equilibrium80];

    pub fn code(&self) -> &'static str {
        match self {
            MoistureLevel::Saturated => "sat",
            MoistureLevel::Equilibrium => "eq",
            MoistureLevel::Equilibrium80 => "eq80",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.code() == s)
    }
}

/// Raw SWCC fit without the saturated water content.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwccFit {
    pub a_f: f64,
    pub b_f: f64,
    pub c_f: f64,
    pub h_r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFixture {
    pub state_code: String,
    pub shrp_id: String,
    pub moisture: MoistureLevel,
    pub delta: f64,
    pub swcc: SwccFit,
    pub theta: f64,
    pub saturation_pct: f64,
    pub suction_kpa: f64,
    pub f: f64,
    pub coeffs: MrCoefficients,
    pub mr_kpa: f64,
}

impl ScenarioFixture {
    pub fn id(&self) -> String {
        format!("{}-{}", self.state_code, self.shrp_id)
    }
}

/// One (moisture, bond) analysis case of a section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRun {
    pub section_id: String,
    pub level: MoistureLevel,
    pub moisture: MoistureState,
    pub delta: f64,
    pub coeffs: MrCoefficients,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScenarioSet {
    pub runs: Vec<ScenarioRun>,
    pub warnings: Vec<String>,
}

fn body_after_version(text: &str, version: &str) -> Result<String> {
    let first = text.lines().next().unwrap_or("").trim();
    if first != version {
        return Err(Error::Parse { row: 1, column: "-".into(), msg: format!("expected version line '{version}', found '{first}'") });
    }
    Ok(text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n"))
}

fn records(text: &str, version: &str, header: &[&str]) -> Result<Vec<(usize, csv::StringRecord)>> {
    let body = body_after_version(text, version)?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(body.as_bytes());
    let got: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if got != header {
        return Err(Error::Parse { row: 0, column: "header".into(), msg: format!("expected {header:?}, found {got:?}") });
    }
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse { row: i + 1, column: "-".into(), msg: e.to_string() })?;
        out.push((i + 1, rec));
    }
    Ok(out)
}

fn cell<'a>(rec: &'a csv::StringRecord, header: &[&str], row: usize, col: &str) -> Result<&'a str> {
    let idx = header.iter().position(|h| *h == col).expect("known column");
    rec.get(idx).ok_or_else(|| Error::Parse { row, column: col.into(), msg: "missing cell".into() })
}

fn num(rec: &csv::StringRecord, header: &[&str], row: usize, col: &str) -> Result<f64> {
    let s = cell(rec, header, row, col)?;
    s.parse::<f64>().map_err(|e| Error::Parse { row, column: col.into(), msg: format!("'{s}': {e}") })
}

fn opt_num(rec: &csv::StringRecord, header: &[&str], row: usize, col: &str) -> Result<Option<f64>> {
    if cell(rec, header, row, col)?.is_empty() {
        Ok(None)
    } else {
        num(rec, header, row, col).map(Some)
    }
}

/// Parses section-fixture text.
pub fn parse_sections(text: &str) -> Result<Vec<SectionFixture>> {
    let h = &SECTION_HEADER;
    records(text, SECTIONS_VERSION, h)?
        .into_iter()
        .map(|(row, rec)| {
            let s = SectionFixture {
                climate_zone: cell(&rec, h, row, "climate_zone")?.to_string(),
                state: cell(&rec, h, row, "state")?.to_string(),
                state_code: cell(&rec, h, row, "state_code")?.to_string(),
                shrp_id: cell(&rec, h, row, "shrp_id")?.to_string(),
                slab_thickness_in: num(&rec, h, row, "slab_thickness_in")?,
                base_thickness_in: num(&rec, h, row, "base_thickness_in")?,
                slab_modulus_psi: num(&rec, h, row, "slab_modulus_psi")?,
                base_modulus_psi: num(&rec, h, row, "base_modulus_psi")?,
                subgrade_modulus_psi: num(&rec, h, row, "subgrade_modulus_psi")?,
                delta: num(&rec, h, row, "delta")?,
                nu_slab: opt_num(&rec, h, row, "nu_slab")?,
                nu_base: opt_num(&rec, h, row, "nu_base")?,
                nu_subgrade: opt_num(&rec, h, row, "nu_subgrade")?,
            };
            s.to_section()
                .validate()
                .map_err(|e| Error::Validation(format!("section {} (row {row}): {e}", s.id())))?;
            Ok(s)
        })
        .collect()
}

/// Parses scenario-fixture text, filling blank SWCC and k cells from the
/// first row of the same section.
pub fn parse_scenarios(text: &str) -> Result<Vec<ScenarioFixture>> {
    let h = &SCENARIO_HEADER;
    let mut out: Vec<ScenarioFixture> = Vec::new();
    for (row, rec) in records(text, SCENARIOS_VERSION, h)? {
        let state_code = cell(&rec, h, row, "state_code")?.to_string();
        let shrp_id = cell(&rec, h, row, "shrp_id")?.to_string();
        let first = out.iter().find(|s| s.state_code == state_code && s.shrp_id == shrp_id);
        let inherit = |col: &str, prev: Option<f64>| -> Result<f64> {
            match (opt_num(&rec, h, row, col)?, prev) {
                (Some(v), _) | (None, Some(v)) => Ok(v),
                (None, None) => Err(Error::Parse { row, column: col.into(), msg: "blank cell with no earlier row to inherit from".into() }),
            }
        };
        let swcc = SwccFit {
            a_f: inherit("a_f", first.map(|s| s.swcc.a_f))?,
            b_f: inherit("b_f", first.map(|s| s.swcc.b_f))?,
            c_f: inherit("c_f", first.map(|s| s.swcc.c_f))?,
            h_r: inherit("h_r", first.map(|s| s.swcc.h_r))?,
        };
        let coeffs = MrCoefficients {
            k1: inherit("k1", first.map(|s| s.coeffs.k1))?,
            k2: inherit("k2", first.map(|s| s.coeffs.k2))?,
            k3: inherit("k3", first.map(|s| s.coeffs.k3))?,
        };
        let level = cell(&rec, h, row, "moisture")?;
        let moisture = MoistureLevel::parse(level)
            .ok_or_else(|| Error::Parse { row, column: "moisture".into(), msg: format!("unknown level '{level}'") })?;
        let delta = num(&rec, h, row, "delta")?;
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::Validation(format!("row {row}: delta {delta} outside [0, 1]")));
        }
        out.push(ScenarioFixture {
            state_code,
            shrp_id,
            moisture,
            delta,
            swcc,
            theta: num(&rec, h, row, "theta")?,
            saturation_pct: num(&rec, h, row, "saturation_pct")?,
            suction_kpa: num(&rec, h, row, "suction_kpa")?,
            f: num(&rec, h, row, "f")?,
            coeffs,
            mr_kpa: num(&rec, h, row, "mr_kpa")?,
        });
    }
    Ok(out)
}

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

/// Serialises sections in the fixture format.
pub fn write_sections(sections: &[SectionFixture]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(SECTION_HEADER)?;
    for s in sections {
        w.write_record([
            s.climate_zone.clone(),
            s.state.clone(),
            s.state_code.clone(),
            s.shrp_id.clone(),
            fmt(s.slab_thickness_in),
            fmt(s.base_thickness_in),
            fmt(s.slab_modulus_psi),
            fmt(s.base_modulus_psi),
            fmt(s.subgrade_modulus_psi),
            fmt(s.delta),
            fmt_opt(s.nu_slab),
            fmt_opt(s.nu_base),
            fmt_opt(s.nu_subgrade),
        ])?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))?;
    Ok(format!("{SECTIONS_VERSION}\n{body}"))
}

/// Serialises scenarios; repeated SWCC and k cells are left blank.
pub fn write_scenarios(rows: &[ScenarioFixture]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(SCENARIO_HEADER)?;
    for (i, s) in rows.iter().enumerate() {
        let first = rows[..i].iter().find(|p| p.id() == s.id());
        let keep = |v: f64, p: Option<f64>| if p == Some(v) { String::new() } else { fmt(v) };
        w.write_record([
            s.state_code.clone(),
            s.shrp_id.clone(),
            s.moisture.code().to_string(),
            fmt(s.delta),
            keep(s.swcc.a_f, first.map(|p| p.swcc.a_f)),
            keep(s.swcc.b_f, first.map(|p| p.swcc.b_f)),
            keep(s.swcc.c_f, first.map(|p| p.swcc.c_f)),
            keep(s.swcc.h_r, first.map(|p| p.swcc.h_r)),
            fmt(s.theta),
            fmt(s.saturation_pct),
            fmt(s.suction_kpa),
            fmt(s.f),
            keep(s.coeffs.k1, first.map(|p| p.coeffs.k1)),
            keep(s.coeffs.k2, first.map(|p| p.coeffs.k2)),
            keep(s.coeffs.k3, first.map(|p| p.coeffs.k3)),
            fmt(s.mr_kpa),
        ])?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))?;
    Ok(format!("{SCENARIOS_VERSION}\n{body}"))
}

pub fn load_sections(path: &Path) -> Result<Vec<SectionFixture>> {
    parse_sections(&std::fs::read_to_string(path)?)
}

pub fn load_scenarios(path: &Path) -> Result<Vec<ScenarioFixture>> {
    parse_scenarios(&std::fs::read_to_string(path)?)
}

/// Fixture text from `$SLABK_FIXTURES/<name>` when set, else the built-in copy.
pub fn fixture_text(name: &str, builtin: &str) -> Result<String> {
    match std::env::var_os(FIXTURES_ENV) {
        Some(dir) => Ok(std::fs::read_to_string(Path::new(&dir).join(name))?),
        None => Ok(builtin.to_string()),
    }
}

pub fn default_sections() -> Result<Vec<SectionFixture>> {
    parse_sections(&fixture_text("sections.csv", BUILTIN_SECTIONS)?)
}

pub fn default_scenarios() -> Result<Vec<ScenarioFixture>> {
    parse_scenarios(&fixture_text("scenarios.csv", BUILTIN_SCENARIOS)?)
}

/// The nine (moisture, bond) runs of a section.
///
/// The tabulated theta, S, suction and f are used as given. Each state is
/// also rebuilt from the SWCC fit at the tabulated suction, and a warning
/// lists both when they disagree by more than 2 %. A tabulated `f` above
/// `1/theta` is clamped to `1/theta` with a warning.
pub fn expand_scenarios(section: &SectionFixture, fixture: &[ScenarioFixture]) -> Result<ScenarioSet> {
    let id = section.id();
    let rows: Vec<&ScenarioFixture> = fixture.iter().filter(|s| s.id() == id).collect();
    let mut set = ScenarioSet::default();
    let get = |level: MoistureLevel| {
        rows.iter()
            .find(|r| r.moisture == level)
            .copied()
            .ok_or_else(|| Error::Validation(format!("section {id}: no '{}' scenario row", level.code())))
    };
    let sat = get(MoistureLevel::Saturated)?;
    let theta_sat = sat.theta;
    let mut bonds: Vec<f64> = rows.iter().map(|r| r.delta).collect();
    bonds.sort_by(f64::total_cmp);
    bonds.dedup();
    if bonds.len() != 3 || bonds[0] != 0.0 || bonds[2] != 1.0 {
        return Err(Error::Validation(format!("section {id}: bond set {bonds:?} is not {{0, delta, 1}}")));
    }
    if (bonds[1] - section.delta).abs() > 1e-12 {
        set.warnings.push(format!("section {id}: scenario bond {} differs from section delta {}", bonds[1], section.delta));
    }
    let swcc = SwccParams { a_f: sat.swcc.a_f, b_f: sat.swcc.b_f, c_f: sat.swcc.c_f, h_r: sat.swcc.h_r, theta_sat };
    for level in MoistureLevel::ALL {
        let r = get(level)?;
        let saturation = r.saturation_pct / 100.0;
        let mut f = r.f;
        if r.theta > 0.0 && f > 1.0 / r.theta {
            set.warnings.push(format!(
                "section {id} {}: f = {} exceeds 1/theta = {:.4}; clamped",
                level.code(),
                r.f,
                1.0 / r.theta
            ));
            f = 1.0 / r.theta;
        }
        let moisture = MoistureState { theta: r.theta, saturation, suction_kpa: r.suction_kpa, f };
        moisture.validate().map_err(|e| Error::Validation(format!("section {id} {}: {e}", level.code())))?;
        let s_rebuilt = swcc_saturation(kpa_to_cm(r.suction_kpa), &swcc)?;
        let theta_rebuilt = s_rebuilt * theta_sat;
        let off = |a: f64, b: f64| (a - b).abs() > CROSS_CHECK_TOL * b.abs().max(1e-12);
        if off(s_rebuilt, saturation) || off(theta_rebuilt, r.theta) {
            set.warnings.push(format!(
                "section {id} {}: SWCC at {} kPa gives S = {:.4}, theta = {:.4}; table lists S = {:.4}, theta = {:.4}",
                level.code(),
                r.suction_kpa,
                s_rebuilt,
                theta_rebuilt,
                saturation,
                r.theta
            ));
        }
        for &delta in &bonds {
            set.runs.push(ScenarioRun { section_id: id.clone(), level, moisture, delta, coeffs: r.coeffs });
        }
    }
    Ok(set)
}
