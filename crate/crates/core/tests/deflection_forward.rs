use proptest::prelude::*;
use slabk::forward::winkler::flexural_rigidity;
use slabk::forward::{
    full_structure_basin, halfspace_plate_basin, plate_on_layers_basin,
    point_load_center_deflection, radius_of_relative_stiffness, winkler_plate_basin, winkler_plate_basin_with,
    winkler_series_basin, ForwardModel, FwdLoad, Layer, PlateOnLayers, WinklerOptions, SENSOR_OFFSETS,
};
use slabk::ingest::default_sections;
use slabk::kvalue::{k_for_base_modulus, PipelineOptions};
use slabk::slab::{transformed_section, PavementSection};
use slabk::units::pci_to_pa_per_m;

fn section(id: &str) -> PavementSection {
    default_sections().unwrap().into_iter().find(|s| s.id() == id).unwrap().to_section()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn single_halfspace(h: f64, e: f64, nu: f64, e_sg: f64, nu_sg: f64) -> PlateOnLayers {
    PlateOnLayers {
        h_plate: h,
        e_plate: e,
        nu_plate: nu,
        kappa: 0.0,
        layers: vec![Layer { e: e_sg, nu: nu_sg, thickness: None }],
        rigid_bottom: false,
    }
}

#[test]
fn frictionless_plate_on_halfspace_transfer() {
    let m = single_halfspace(0.25, 3e10, 0.15, 1e8, 0.4);
    let d = flexural_rigidity(0.25, 3e10, 0.15);
    let c = 1e8 / (2.0 * (1.0 - 0.16));
    for xi in [1e-3_f64, 0.1, 1.0, 3.7, 25.0, 400.0] {
        let want = 1.0 / (d * xi.powi(4) + c * xi);
        assert!(rel(m.transfer(xi).unwrap(), want) < 1e-10, "xi = {xi}");
    }
}

#[test]
fn layer_stack_reduces_to_halfspace_solution() {
    let load = FwdLoad::default();
    let m = single_halfspace(0.25, 3e10, 0.15, 1e8, 0.4);
    let a = plate_on_layers_basin(&m, &load, &SENSOR_OFFSETS).unwrap();
    let b = halfspace_plate_basin(0.25, 3e10, 0.15, 1e8, 0.4, &load, &SENSOR_OFFSETS).unwrap();
    for (x, y) in a.deflections.iter().zip(&b.deflections) {
        assert!(rel(*x, *y) < 1e-6);
    }
}

#[test]
fn halfspace_point_load_limit() {
    let (h, e, nu, e_sg, nu_sg) = (0.25, 3e10, 0.15, 1e8, 0.4);
    let c = e_sg / (2.0 * (1.0 - nu_sg * nu_sg));
    let ell = (flexural_rigidity(h, e, nu) / c).cbrt();
    let p = 40_000.0;
    let w_point = p / (3.0 * 3f64.sqrt() * c * ell);
    let load = FwdLoad { magnitude: p, radius: 0.01 * ell };
    let w = halfspace_plate_basin(h, e, nu, e_sg, nu_sg, &load, &[0.0]).unwrap().d0();
    assert!(w <= w_point);
    assert!(rel(w, w_point) < 0.05);
}

#[test]
fn winkler_grid_matches_kelvin_series() {
    let (h, e, nu, k) = (0.25, 3e10, 0.15, pci_to_pa_per_m(200.0));
    let load = FwdLoad::default();
    let offsets = [0.0, 0.1, 0.3048, 0.6096, 0.9144, 1.5];
    let fd = winkler_plate_basin(h, e, nu, k, &load, &offsets).unwrap();
    let series = winkler_series_basin(h, e, nu, k, &load, &offsets).unwrap();
    for (a, b) in fd.deflections.iter().zip(&series.deflections) {
        assert!(rel(*a, *b) < 5e-3, "{a} vs {b}");
    }
}

#[test]
fn winkler_point_load_limit() {
    let (h, e, nu, k) = (0.25, 3e10, 0.15, pci_to_pa_per_m(200.0));
    let ell = radius_of_relative_stiffness(h, e, nu, k);
    let load = FwdLoad { magnitude: 40_000.0, radius: 0.01 * ell };
    let w = winkler_plate_basin(h, e, nu, k, &load, &[0.0]).unwrap().d0();
    let w_point = point_load_center_deflection(load.magnitude, h, e, nu, k);
    assert!(rel(w, w_point) < 5e-3);
}

#[test]
fn halving_grid_step_barely_moves_center_deflection() {
    let (h, e, nu, k) = (0.25, 3e10, 0.15, pci_to_pa_per_m(200.0));
    let coarse = WinklerOptions { initial_density: 32, max_density: 64, rel_tol: f64::INFINITY, ..Default::default() };
    let fine = WinklerOptions { initial_density: 64, max_density: 128, rel_tol: f64::INFINITY, ..Default::default() };
    let load = FwdLoad::default();
    let a = winkler_plate_basin_with(h, e, nu, k, &load, &[0.0], &coarse).unwrap().d0();
    let b = winkler_plate_basin_with(h, e, nu, k, &load, &[0.0], &fine).unwrap().d0();
    assert!(rel(a, b) < 5e-3);
}

#[test]
fn stiffer_foundation_deflects_less() {
    let load = FwdLoad::default();
    let k = pci_to_pa_per_m(150.0);
    let a = winkler_plate_basin(0.25, 3e10, 0.15, k, &load, &[0.0]).unwrap().d0();
    let b = winkler_plate_basin(0.25, 3e10, 0.15, 2.0 * k, &load, &[0.0]).unwrap().d0();
    assert!(b < a);
}

#[test]
fn north_dakota_basin_regression() {
    let sec = section("38-3006");
    let b = full_structure_basin(&sec, sec.e_base, &FwdLoad::default(), &ForwardModel::default()).unwrap();
    let want = [7.591967833876206e-05, 6.901944520072786e-05, 5.6488462348327564e-05, 4.378224592107586e-05];
    for (got, want) in b.deflections.iter().zip(want) {
        assert!(rel(*got, want) < 1e-6, "{got} vs {want}");
    }
}

#[test]
fn winkler_far_field_deflection_is_small() {
    let opts = PipelineOptions::default();
    for s in default_sections().unwrap() {
        let sec = s.to_section();
        let k = k_for_base_modulus(&sec, sec.e_base, &opts).unwrap();
        let h_eq = transformed_section(&sec).unwrap().h_eq;
        let b = winkler_plate_basin(h_eq, sec.e_slab, sec.nu_slab, k.k_pa_per_m, &opts.load, &[0.0, 3.0]).unwrap();
        assert!(b.deflections[1] <= 0.05 * b.d0(), "{}: {:?}", s.id(), b.deflections);
    }
}

#[test]
fn full_bond_lowers_center_deflection() {
    for model in [ForwardModel::default(), ForwardModel::EquivalentHalfspace] {
        for s in default_sections().unwrap() {
            let sec = s.to_section();
            let d = |delta: f64| {
                full_structure_basin(&sec.with_delta(delta), sec.e_base, &FwdLoad::default(), &model).unwrap().d0()
            };
            assert!(d(1.0) < d(0.0), "{}", s.id());
        }
    }
}

#[test]
fn halfspace_model_composes_equivalent_thickness() {
    let sec = section("01-0606");
    let load = FwdLoad::default();
    let h_eq = transformed_section(&sec).unwrap().h_eq;
    let a = full_structure_basin(&sec, sec.e_base, &load, &ForwardModel::EquivalentHalfspace).unwrap();
    let b = halfspace_plate_basin(h_eq, sec.e_slab, sec.nu_slab, sec.e_subgrade, sec.nu_subgrade, &load, &SENSOR_OFFSETS)
        .unwrap();
    assert_eq!(a, b);
}

#[test]
fn both_models_decay_with_offset() {
    for model in [ForwardModel::default(), ForwardModel::EquivalentHalfspace] {
        for s in default_sections().unwrap() {
            let sec = s.to_section();
            let b = full_structure_basin(&sec, sec.e_base, &FwdLoad::default(), &model).unwrap();
            assert!(b.deflections.windows(2).all(|w| w[1] < w[0]), "{}: {:?}", s.id(), b.deflections);
        }
    }
}

fn arb_section() -> impl Strategy<Value = PavementSection> {
    (0.178f64..0.33, 0.089f64..0.254, 2.0e10f64..7.6e10, 3.45e7f64..6.9e9, 3.45e7f64..5.5e8, 0.0f64..1.0).prop_map(
        |(h_s, h_b, e_slab, e_base, e_subgrade, delta)| PavementSection {
            h_s,
            h_b,
            e_slab,
            e_base,
            e_subgrade,
            nu_slab: 0.15,
            nu_base: 0.35,
            nu_subgrade: 0.4,
            delta,
        },
    )
}

fn basin(sec: &PavementSection, load: &FwdLoad) -> Vec<f64> {
    full_structure_basin(sec, sec.e_base, load, &ForwardModel::default()).unwrap().deflections
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deflections_are_linear_in_load(sec in arb_section(), s in 0.25f64..4.0) {
        let load = FwdLoad::default();
        let a = basin(&sec, &load);
        let b = basin(&sec, &FwdLoad { magnitude: s * load.magnitude, ..load });
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(rel(*y, s * x) < 1e-10);
        }
    }

    #[test]
    fn stiffer_subgrade_lowers_every_deflection(sec in arb_section()) {
        let load = FwdLoad::default();
        let a = basin(&sec, &load);
        let b = basin(&PavementSection { e_subgrade: 2.0 * sec.e_subgrade, ..sec }, &load);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(y < x);
        }
    }

    #[test]
    fn stiffer_structure_lowers_deflections(sec in arb_section(), f in 1.1f64..3.0) {
        let load = FwdLoad::default();
        let d0 = basin(&sec, &load);
        let variants = [
            PavementSection { e_slab: f * sec.e_slab, ..sec },
            PavementSection { e_base: f * sec.e_base, ..sec },
            PavementSection { e_subgrade: f * sec.e_subgrade, ..sec },
            sec.with_delta((sec.delta + 0.2).min(1.0)),
        ];
        for (i, v) in variants.iter().enumerate() {
            if i == 3 && sec.delta >= 1.0 {
                continue;
            }
            let b = basin(v, &load);
            // a stiffer plate spreads the load, so only D0 must drop for slab and bond
            let sensors = if i == 0 || i == 3 { 1 } else { 4 };
            for j in 0..sensors {
                prop_assert!(b[j] < d0[j], "variant {i} sensor {j}");
            }
        }
    }

    #[test]
    fn deflections_decrease_with_offset(sec in arb_section()) {
        let b = basin(&sec, &FwdLoad::default());
        prop_assert!(b.windows(2).all(|w| w[1] < w[0]));
    }
}
