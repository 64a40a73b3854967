use proptest::prelude::*;
use slabk::distress::{
    accumulate_faulting, allowable_loads, crack_fraction, differential_energy, miner_damage, total_crack,
    winkler_joint_deflections, CornerDeflections, FatigueCase, FaultingMonth,
};
use slabk::forward::FwdLoad;
use slabk::ingest::default_sections;

#[test]
fn crack_fraction_hand_value() {
    assert!((crack_fraction(0.25).unwrap() - 0.08875156315734897).abs() < 1e-15);
    assert_eq!(crack_fraction(1.0).unwrap(), 0.5);
    assert_eq!(crack_fraction(0.0).unwrap(), 0.0);
    assert!(crack_fraction(-0.1).is_err());
}

#[test]
fn allowable_loads_hand_value() {
    let n = allowable_loads(1000.0, 500.0, 2.0, 1.22).unwrap();
    assert!(((n - 124748.21665922199) / n).abs() < 1e-12);
}

#[test]
fn three_month_faulting_recursion() {
    let months = vec![FaultingMonth { faultmax: 0.1, de: 0.04 }; 3];
    let s = accumulate_faulting(&months, 0.005).unwrap();
    let want = [2.0000000000000003e-06, 3.999920000800001e-06, 5.999760007199841e-06];
    for (a, b) in s.fault.iter().zip(want) {
        assert!((a - b).abs() < 1e-18);
    }
    assert!(s.clamped_months.is_empty());
}

#[test]
fn differential_energy_hand_value() {
    let de = differential_energy(&CornerDeflections { loaded: 0.03, unloaded: 0.01, k: 100.0 }).unwrap();
    assert!((de - 0.04).abs() < 1e-15);
    assert!(differential_energy(&CornerDeflections { loaded: 0.01, unloaded: 0.03, k: 100.0 }).is_err());
}

#[test]
fn joint_deflections_follow_load_transfer() {
    let sec = default_sections().unwrap()[0].to_section();
    let load = FwdLoad { magnitude: 11000.0 * 4.4482216, radius: 5.9 * 0.0254 };
    let full = winkler_joint_deflections(&sec, 200.0, &load, 1.0).unwrap();
    assert_eq!(differential_energy(&full).unwrap(), 0.0);
    let half = winkler_joint_deflections(&sec, 200.0, &load, 0.5).unwrap();
    assert!((half.unloaded - 0.5 * half.loaded).abs() < 1e-18);
    assert!(half.loaded > 0.0 && half.loaded < 0.1);
    let soft = winkler_joint_deflections(&sec, 100.0, &load, 0.5).unwrap();
    assert!(soft.loaded > half.loaded);
    assert!(winkler_joint_deflections(&sec, 200.0, &load, 1.5).is_err());
}

fn case(n: f64, stress: f64) -> FatigueCase {
    FatigueCase { applied_n: n, stress, modulus_rupture: 650.0, label: String::new() }
}

fn arb_cases() -> impl Strategy<Value = Vec<FatigueCase>> {
    prop::collection::vec((0.0f64..1e6, 100.0f64..600.0).prop_map(|(n, s)| case(n, s)), 1..12)
}

proptest! {
    #[test]
    fn crack_fraction_increases(a in 1e-6f64..100.0, d in 1e-6f64..10.0) {
        let lo = crack_fraction(a).unwrap();
        let hi = crack_fraction(a + d).unwrap();
        prop_assert!(hi > lo && lo > 0.0 && hi < 1.0);
    }

    #[test]
    fn total_crack_is_symmetric_and_dominates(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let t = total_crack(a, b).unwrap();
        prop_assert_eq!(t, total_crack(b, a).unwrap());
        prop_assert!(t >= a.max(b) * 100.0 - 1e-12 && t <= 100.0 + 1e-12);
    }

    #[test]
    fn damage_ignores_case_order(cases in arb_cases(), seed in any::<u64>()) {
        let a = miner_damage(&cases, 2.0, 1.22).unwrap();
        let mut shuffled = cases.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        shuffled.reverse();
        let b = miner_damage(&shuffled, 2.0, 1.22).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
    }

    #[test]
    fn damage_adds_over_tables(a in arb_cases(), b in arb_cases()) {
        let joined: Vec<FatigueCase> = a.iter().chain(&b).cloned().collect();
        let sum = miner_damage(&a, 2.0, 1.22).unwrap() + miner_damage(&b, 2.0, 1.22).unwrap();
        let all = miner_damage(&joined, 2.0, 1.22).unwrap();
        prop_assert!((all - sum).abs() <= 1e-12 * sum.abs().max(1e-300));
    }

    #[test]
    fn faulting_rises_towards_envelope(fmax in 0.01f64..0.5, de in 0.0f64..50.0, months in 1usize..240) {
        let s = accumulate_faulting(&vec![FaultingMonth { faultmax: fmax, de }; months], 0.005).unwrap();
        prop_assert!(s.fault.windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(s.fault.iter().all(|f| *f <= fmax));
    }

    #[test]
    fn energy_scales_with_square_of_deflection(l in 0.0f64..1.0, r in 0.0f64..=1.0, k in 0.0f64..1000.0, s in 0.01f64..100.0) {
        let c = CornerDeflections { loaded: l, unloaded: l * r, k };
        let a = differential_energy(&c).unwrap();
        let b = differential_energy(&CornerDeflections { loaded: s * l, unloaded: s * l * r, k }).unwrap();
        prop_assert!((b - s * s * a).abs() <= 1e-12 * (s * s * a).max(1e-300));
    }
}

#[test]
fn faulting_converges_to_envelope() {
    let s = accumulate_faulting(&vec![FaultingMonth { faultmax: 0.1, de: 1000.0 }; 2000], 0.005).unwrap();
    assert!((0.1 - s.fault.last().unwrap()) < 1e-3);
}
