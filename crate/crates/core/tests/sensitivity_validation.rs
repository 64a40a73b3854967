use slabk::ingest::{default_scenarios, default_sections};
use slabk::kvalue::PipelineOptions;
use slabk::sensitivity::{percent_change, section_sensitivity, section_sensitivity_with};
use slabk::validation::compare_basins;

#[test]
fn sensitivity_summaries_are_consistent_with_runs() {
    let sections = default_sections().unwrap();
    let scenarios = default_scenarios().unwrap();
    let opts = PipelineOptions::default();
    let s = section_sensitivity(&sections[1], &scenarios, &opts).unwrap();
    assert_eq!(s.runs.len(), 9);
    assert_eq!(s.bond_change[1], percent_change(s.k_bond[2], s.k_bond[0]));
    assert_eq!(s.moisture_change[0], percent_change(s.k_moisture[1], s.k_moisture[0]));
    assert!(s.k_bond.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn custom_predictor_sees_every_run() {
    let sections = default_sections().unwrap();
    let scenarios = default_scenarios().unwrap();
    let s = section_sensitivity_with(&sections[0], &scenarios, &PipelineOptions::default(), |sec, e_base| {
        Ok(100.0 + 100.0 * sec.delta + e_base * 1e-9)
    })
    .unwrap();
    let pure_bond = s.runs.iter().filter(|r| r.level == slabk::ingest::MoistureLevel::Equilibrium);
    assert_eq!(pure_bond.count(), 3);
    assert!((s.k_bond[2] - s.k_bond[0] - 100.0).abs() < 1e-9);
}

#[test]
fn equivalent_slab_tracks_full_structure() {
    let opts = PipelineOptions::default();
    for s in default_sections().unwrap() {
        let c = compare_basins(&s.to_section(), None, &opts).unwrap();
        assert_eq!(c.deviation_pct.len(), 4);
        for (i, d) in c.deviation_pct.iter().enumerate() {
            let want = (c.equivalent.deflections[i] - c.full.deflections[i]) / c.full.deflections[i] * 100.0;
            assert!((d - want).abs() < 1e-12);
        }
        assert!(c.passes(), "{}: {:?}", s.id(), c.deviation_pct);
    }
}
