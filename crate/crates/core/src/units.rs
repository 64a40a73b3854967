//! Exact unit conversions used at module boundaries.

pub const M_PER_IN: f64 = 0.0254;
pub const N_PER_LBF: f64 = 4.448_221_6;
pub const PA_PER_PCI: f64 = 271_447.14;
pub const PA_PER_PSI: f64 = N_PER_LBF / (M_PER_IN * M_PER_IN);
pub const CM_H2O_PER_KPA: f64 = 10.1972;

pub fn in_to_m(x: f64) -> f64 {
    x * M_PER_IN
}

pub fn m_to_in(x: f64) -> f64 {
    x / M_PER_IN
}

pub fn psi_to_pa(x: f64) -> f64 {
    x * PA_PER_PSI
}

pub fn pa_to_psi(x: f64) -> f64 {
    x / PA_PER_PSI
}

pub fn pci_to_pa_per_m(x: f64) -> f64 {
    x * PA_PER_PCI
}

pub fn pa_per_m_to_pci(x: f64) -> f64 {
    x / PA_PER_PCI
}

pub fn n_to_lbf(x: f64) -> f64 {
    x / N_PER_LBF
}

pub fn kpa_to_cm(x: f64) -> f64 {
    x * CM_H2O_PER_KPA
}

pub fn cm_to_kpa(x: f64) -> f64 {
    x / CM_H2O_PER_KPA
}

pub fn mm_to_m(x: f64) -> f64 {
    x * 1e-3
}

pub fn mpa_to_pa(x: f64) -> f64 {
    x * 1e6
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_inches_is_exactly_a_quarter_metre() {
        assert_eq!(in_to_m(10.0), 0.254);
    }

    #[test]
    fn psi_matches_lbf_over_square_inch() {
        assert!((psi_to_pa(1.0) - 6894.757).abs() < 1e-3);
    }

    #[test]
    fn suction_roundtrip() {
        assert!((cm_to_kpa(kpa_to_cm(751.0)) - 751.0).abs() < 1e-12);
    }
}
