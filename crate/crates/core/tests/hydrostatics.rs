use proptest::prelude::*;
use slabk::hydrostatics::{invert_swcc, moisture_state, swcc_correction, swcc_saturation, SwccParams, H_MAX_CM};
use slabk::ingest::{default_scenarios, MoistureLevel};
use slabk::Error;

fn fixture_sets() -> Vec<SwccParams> {
    default_scenarios()
        .unwrap()
        .iter()
        .filter(|s| s.moisture == MoistureLevel::Saturated)
        .map(|s| SwccParams { a_f: s.swcc.a_f, b_f: s.swcc.b_f, c_f: s.swcc.c_f, h_r: s.swcc.h_r, theta_sat: s.theta })
        .collect()
}

fn p27() -> SwccParams {
    SwccParams { a_f: 4.91, b_f: 2.62, c_f: 1.65, h_r: 300.0, theta_sat: 0.174 }
}

#[test]
fn correction_matches_hand_value() {
    // 1 - ln 2 / ln(1 + 1.021e7 / 300)
    assert!((swcc_correction(300.0, 300.0).unwrap() - 0.9335755753716769).abs() < 1e-14);
    assert!(swcc_correction(H_MAX_CM, 300.0).unwrap().abs() < 1e-15);
}

#[test]
fn saturation_matches_scalar_oracle() {
    assert!((swcc_saturation(4.91, &p27()).unwrap() - 0.636860375352686).abs() < 1e-13);
}

#[test]
fn unsaturated_state_has_unit_factor() {
    let m = moisture_state(&p27(), 2000.0).unwrap();
    assert!(m.saturation < 0.999);
    assert_eq!(m.f, 1.0);
    assert!((m.theta - m.saturation * 0.174).abs() < 1e-15);
}

#[test]
fn zero_saturated_water_content_is_rejected() {
    let p = SwccParams { theta_sat: 0.0, ..p27() };
    assert!(matches!(moisture_state(&p, 0.0), Err(Error::Parameter(_))));
}

#[test]
fn all_fixture_sets_start_saturated() {
    for p in fixture_sets() {
        assert_eq!(swcc_saturation(0.0, &p).unwrap(), 1.0);
    }
}

#[test]
fn nonpositive_residual_head_is_rejected() {
    assert!(matches!(swcc_correction(10.0, -1.0), Err(Error::Parameter(_))));
}

proptest! {
    #[test]
    fn round_trip_over_fixture_sets(idx in 0usize..8, log_h in 0.0f64..6.0) {
        let p = fixture_sets()[idx];
        let h = 10f64.powf(log_h);
        let back = invert_swcc(swcc_saturation(h, &p).unwrap(), &p).unwrap();
        prop_assert!(((back - h) / h).abs() <= 1e-6);
    }

    #[test]
    fn saturation_is_nonincreasing(idx in 0usize..8, h in 0.0f64..1e6, dh in 0.0f64..1e5) {
        let p = fixture_sets()[idx];
        let a = swcc_saturation(h, &p).unwrap();
        let b = swcc_saturation(h + dh, &p).unwrap();
        prop_assert!(b <= a);
        prop_assert!((0.0..=1.0).contains(&a));
    }
}
