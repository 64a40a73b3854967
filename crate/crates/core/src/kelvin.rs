//! Kelvin functions of order zero and their first derivatives by ascending
//! power series. Accurate to near machine precision for `0 < x <= 10`.

use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kelvin {
    pub ber: f64,
    pub bei: f64,
    pub ker: f64,
    pub kei: f64,
    pub dber: f64,
    pub dbei: f64,
    pub dker: f64,
    pub dkei: f64,
}

/// All eight values at `x > 0`.
pub fn kelvin(x: f64) -> Kelvin {
    assert!(x > 0.0, "Kelvin functions need x > 0");
    let u = 0.5 * x;
    let (mut ber, mut bei, mut dber, mut dbei) = (0.0, 0.0, 0.0, 0.0);
    // series parts of ker/kei beyond the log and pi/4 terms
    let (mut sr, mut si, mut dsr, mut dsi) = (0.0, 0.0, 0.0, 0.0);
    let mut harmonic = 0.0; // H(m) = 1 + 1/2 + ... + 1/m
    let mut fact = 1.0; // m!
    for m in 0..120usize {
        if m > 0 {
            harmonic += 1.0 / m as f64;
            fact *= m as f64;
        }
        // term u^{2m} / (m!)^2 with sign pattern by m mod 4
        let p = 2 * m as i32;
        let t = u.powi(p) / (fact * fact);
        let dt = if m == 0 { 0.0 } else { (p as f64) * 0.5 * u.powi(p - 1) / (fact * fact) };
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            ber += sign * t;
            dber += sign * dt;
            sr += sign * harmonic * t;
            dsr += sign * harmonic * dt;
        } else {
            bei += sign * t;
            dbei += sign * dt;
            si += sign * harmonic * t;
            dsi += sign * harmonic * dt;
        }
        if m > 4 && t < 1e-18 * (ber.abs() + bei.abs()) {
            break;
        }
    }
    let lg = u.ln() + EULER_GAMMA;
    let ker = -lg * ber + 0.25 * PI * bei + sr;
    let kei = -lg * bei - 0.25 * PI * ber + si;
    let dker = -ber / x - lg * dber + 0.25 * PI * dbei + dsr;
    let dkei = -bei / x - lg * dbei - 0.25 * PI * dber + dsi;
    Kelvin { ber, bei, ker, kei, dber, dbei, dker, dkei }
}
