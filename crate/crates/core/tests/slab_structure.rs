use proptest::prelude::*;
use slabk::ingest::default_sections;
use slabk::slab::{contact_params, contact_pressure, interface_shear_capacity, transformed_section, PavementSection};
use slabk::Error;

fn section(id: &str) -> PavementSection {
    default_sections().unwrap().into_iter().find(|s| s.id() == id).unwrap().to_section()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn minnesota_transformed_section() {
    let ts = transformed_section(&section("27-4034")).unwrap();
    assert!(close(ts.z_bar, 0.1271966022029572, 1e-12));
    assert!(close(ts.i_tr, 0.0013702754058641734, 1e-12));
    assert!(close(ts.h_eq, 0.25236858441846666, 1e-12));
}

#[test]
fn pressure_directly_under_load() {
    assert!(close(contact_pressure(40_000.0, 0.25, 0.0).unwrap(), 305577.49073643907, 1e-12));
}

#[test]
fn shear_capacity_symmetric_case() {
    let tau = interface_shear_capacity(40_000.0, 0.25, 0.15, 0.15, 0.2, 1.0).unwrap();
    assert!(close(tau, 85001.25537310354, 1e-12));
}

#[test]
fn kentucky_contact_parameters() {
    let sec = section("21-4025");
    let ts = transformed_section(&sec).unwrap();
    assert!(close(ts.z_bar, 0.1262688813984479, 1e-12));
    let c = contact_params(&sec, 40_000.0, 0.15).unwrap();
    assert!(close(c.n_pressure, 142081.67484829872, 1e-12));
    assert!(close(c.tau_max, 5186270.49895504, 1e-12));
    assert!(close(c.mu.unwrap(), 0.027395731648961648, 1e-12));
    assert!(close(c.k_l, 18115369005.963818, 1e-12));
    assert!(close(c.f_slip, 0.00028629118718187036, 1e-12));
}

#[test]
fn out_of_range_bond_is_rejected() {
    let sec = section("27-4034").with_delta(1.2);
    assert!(matches!(transformed_section(&sec), Err(Error::Validation(_))));
}

proptest! {
    #[test]
    fn equivalent_thickness_grows_with_bond(
        h_s in 0.15f64..0.35, h_b in 0.05f64..0.4, ratio in 1e-4f64..0.5, d1 in 0.0f64..1.0, d2 in 0.0f64..1.0
    ) {
        let base = PavementSection {
            h_s, h_b, e_slab: 3e10, e_base: 3e10 * ratio, e_subgrade: 1e8,
            nu_slab: 0.15, nu_base: 0.35, nu_subgrade: 0.4, delta: 0.0,
        };
        let (lo, hi) = (d1.min(d2), d1.max(d2));
        let a = transformed_section(&base.with_delta(lo)).unwrap();
        let b = transformed_section(&base.with_delta(hi)).unwrap();
        prop_assert!(b.h_eq >= a.h_eq);
        prop_assert!(a.z_bar > h_s / 2.0 && a.z_bar < h_s + h_b / 2.0);
        let unbonded = transformed_section(&base).unwrap();
        prop_assert!((unbonded.i_tr - unbonded.i_slab - unbonded.i_base).abs() <= 1e-15);
    }

    #[test]
    fn shear_capacity_is_linear_in_bond(p in 1e3f64..1e5, a in 0.01f64..0.5, delta in 0.0f64..1.0) {
        let one = interface_shear_capacity(p, 0.25, 0.15, a, 0.2, 1.0).unwrap();
        let part = interface_shear_capacity(p, 0.25, 0.15, a, 0.2, delta).unwrap();
        prop_assert!((part - delta * one).abs() <= 1e-12 * one);
    }

    #[test]
    fn friction_coefficient_relates_pressure_and_shear(idx in 0usize..8, delta in 0.01f64..1.0, a in 0.02f64..0.5) {
        let sec = default_sections().unwrap()[idx].to_section().with_delta(delta);
        let c = contact_params(&sec, 40_000.0, a).unwrap();
        prop_assert!((c.mu.unwrap() * c.tau_max - c.n_pressure).abs() <= 1e-10 * c.n_pressure);
    }
}
