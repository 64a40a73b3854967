use proptest::prelude::*;
use sha2::{Digest, Sha256};
use slabk::ingest::{
    expand_scenarios, load_sections, parse_scenarios, parse_sections, write_scenarios, write_sections, MoistureLevel,
    BUILTIN_SCENARIOS, BUILTIN_SECTIONS,
};
use slabk::Error;

fn sha(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn shipped_fixtures_are_unchanged() {
    assert_eq!(sha(BUILTIN_SECTIONS), "37e4ae38555955a82d09d8976dd34fc077d4455f2f5667245df2df621849319a");
    assert_eq!(sha(BUILTIN_SCENARIOS), "7f8187ee4dffa6bb160f74e2f7ddd99bf0a7c8a25429345ee53c53bc205db1ea");
}

#[test]
fn minnesota_section_converts_to_si() {
    let s = parse_sections(BUILTIN_SECTIONS).unwrap().into_iter().find(|s| s.id() == "27-4034").unwrap();
    let sec = s.to_section();
    assert_eq!(sec.h_s, 0.254);
    assert!(((sec.e_slab - 4.792e10) / 4.792e10).abs() < 1e-3);
    assert_eq!(sec.delta, 0.52);
    assert_eq!((sec.nu_slab, sec.nu_base, sec.nu_subgrade), (0.15, 0.35, 0.40));
}

#[test]
fn north_carolina_section_literals() {
    let s = parse_sections(BUILTIN_SECTIONS).unwrap().into_iter().find(|s| s.id() == "37-5037").unwrap();
    assert_eq!(s.delta, 0.11);
    assert_eq!(s.base_thickness_in, 15.1);
    assert_eq!(s.base_modulus_psi, 326000.0);
}

#[test]
fn out_of_range_bond_is_a_validation_error() {
    let text = BUILTIN_SECTIONS.replacen(",0.52,", ",1.2,", 1);
    assert!(matches!(parse_sections(&text), Err(Error::Validation(_))));
}

#[test]
fn bad_number_reports_row_and_column() {
    let text = BUILTIN_SECTIONS.replacen(",22000,", ",2x2000,", 1);
    match parse_sections(&text) {
        Err(Error::Parse { row, column, .. }) => assert_eq!((row, column.as_str()), (1, "base_modulus_psi")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn blank_cells_inherit_from_first_row() {
    let rows = parse_scenarios(BUILTIN_SCENARIOS).unwrap();
    let ky: Vec<_> = rows.iter().filter(|r| r.id() == "21-4025").collect();
    assert_eq!(ky.len(), 3);
    for r in &ky {
        assert_eq!((r.swcc.a_f, r.swcc.b_f, r.swcc.c_f, r.swcc.h_r), (5.86, 0.34, 1.74, 299.0));
        assert_eq!((r.coeffs.k1, r.coeffs.k2, r.coeffs.k3), (945.55, 0.67, -0.29));
    }
    let eq = ky.iter().find(|r| r.moisture == MoistureLevel::Equilibrium).unwrap();
    assert_eq!((eq.theta, eq.saturation_pct, eq.suction_kpa, eq.mr_kpa), (0.081, 49.66, 201.0, 155712.0));
}

#[test]
fn every_section_expands_to_nine_runs() {
    let sections = parse_sections(BUILTIN_SECTIONS).unwrap();
    let scenarios = parse_scenarios(BUILTIN_SCENARIOS).unwrap();
    let mut total = 0;
    for s in &sections {
        let set = expand_scenarios(s, &scenarios).unwrap();
        assert_eq!(set.runs.len(), 9);
        let mut bonds: Vec<f64> = set.runs.iter().map(|r| r.delta).collect();
        bonds.sort_by(f64::total_cmp);
        bonds.dedup();
        assert_eq!(bonds, vec![0.0, s.delta, 1.0]);
        for r in set.runs.iter().filter(|r| r.level == MoistureLevel::Saturated) {
            assert_eq!(r.moisture.saturation, 1.0);
            assert!(r.moisture.f <= 1.0 / r.moisture.theta * (1.0 + 1e-12));
        }
        total += set.runs.len();
    }
    assert_eq!(total, 72);
}

#[test]
fn inconsistent_saturation_factor_is_clamped_with_warning() {
    let sections = parse_sections(BUILTIN_SECTIONS).unwrap();
    let scenarios = parse_scenarios(BUILTIN_SCENARIOS).unwrap();
    let warned = sections
        .iter()
        .flat_map(|s| expand_scenarios(s, &scenarios).unwrap().warnings)
        .filter(|w| w.contains("clamped"))
        .count();
    let over = scenarios.iter().filter(|r| r.theta > 0.0 && r.f > 1.0 / r.theta).count();
    assert_eq!(warned, over);
}

#[test]
fn missing_scenario_row_is_an_error() {
    let sections = parse_sections(BUILTIN_SECTIONS).unwrap();
    let scenarios: Vec<_> = parse_scenarios(BUILTIN_SCENARIOS)
        .unwrap()
        .into_iter()
        .filter(|r| !(r.id() == "27-4034" && r.moisture == MoistureLevel::Saturated))
        .collect();
    assert!(matches!(expand_scenarios(&sections[0], &scenarios), Err(Error::Validation(_))));
}

#[test]
fn fixtures_load_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sections.csv");
    std::fs::write(&path, BUILTIN_SECTIONS).unwrap();
    assert_eq!(load_sections(&path).unwrap(), parse_sections(BUILTIN_SECTIONS).unwrap());
}

#[test]
fn shipped_fixtures_round_trip() {
    let s = parse_sections(BUILTIN_SECTIONS).unwrap();
    assert_eq!(parse_sections(&write_sections(&s).unwrap()).unwrap(), s);
    let r = parse_scenarios(BUILTIN_SCENARIOS).unwrap();
    assert_eq!(parse_scenarios(&write_scenarios(&r).unwrap()).unwrap(), r);
}

proptest! {
    #[test]
    fn edited_sections_round_trip(
        h in 5.0f64..15.0, e in 1e6f64..1e7, delta in 0.0f64..=1.0, nu in prop::option::of(0.0f64..0.49)
    ) {
        let mut s = parse_sections(BUILTIN_SECTIONS).unwrap();
        s[3].slab_thickness_in = h;
        s[3].slab_modulus_psi = e;
        s[3].delta = delta;
        s[3].nu_base = nu;
        prop_assert_eq!(parse_sections(&write_sections(&s).unwrap()).unwrap(), s);
    }
}
