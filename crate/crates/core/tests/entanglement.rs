use std::f64::consts::SQRT_2;

use nonclassical::entpot::{
    ep_spacs_closed, entanglement_potential, hermitian_spectrum, mix_with_vacuum, partial_transpose, pt_spectrum, rho0_fixture,
    schmidt_ep_pure, split_on_beam_splitter, Spectrum,
};
use nonclassical::fock::FockSpace;
use nonclassical::states::{fock_state, Family, StateSpec};
use num_complex::Complex64 as C64;

fn pacs(alpha: C64, m: u32) -> StateSpec {
    StateSpec::new(Family::Pacs { alpha, m }).unwrap()
}

fn pipeline_ep(spec: &StateSpec) -> f64 {
    entanglement_potential(&spec.density().unwrap()).unwrap().ep_bits
}

fn significant(s: &Spectrum) -> Vec<f64> {
    s.eigenvalues.iter().copied().filter(|v| v.abs() > 1e-9).collect()
}

#[test]
fn spacs_pipeline_matches_closed_form_on_figure_range() {
    for k in 0..=12 {
        let alpha = C64::new(0.25 * k as f64, 0.0);
        let ep = pipeline_ep(&pacs(alpha, 1));
        assert!((ep - ep_spacs_closed(alpha)).abs() < 1e-6, "alpha={alpha}: {ep}");
    }
}

#[test]
fn spacs_ep_depends_only_on_modulus() {
    let r = 1.3;
    let reference = pipeline_ep(&pacs(C64::new(r, 0.0), 1));
    for phase in [0.7, 2.0, -2.9] {
        let ep = pipeline_ep(&pacs(C64::from_polar(r, phase), 1));
        assert!((ep - reference).abs() < 1e-8);
    }
}

#[test]
fn spacs_output_is_locally_equivalent_to_rho0() {
    for alpha in [C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(0.8, -0.6)] {
        let out = pt_spectrum(&pacs(alpha, 1).density().unwrap()).unwrap();
        let fixture = hermitian_spectrum(&partial_transpose(&rho0_fixture(alpha, 3).unwrap())).unwrap();
        let (a, b) = (significant(&out), significant(&fixture));
        assert_eq!(a.len(), b.len(), "alpha={alpha}");
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-8, "alpha={alpha}: {x} vs {y}");
        }
    }
}

#[test]
fn rho0_pt_eigenvalues_at_unit_alpha() {
    let pt = partial_transpose(&rho0_fixture(C64::new(1.0, 0.0), 3).unwrap());
    let spec = hermitian_spectrum(&pt).unwrap();
    let s3 = 3f64.sqrt();
    let expected = [(2.0 + s3) / 4.0, 0.25, -0.25, (2.0 - s3) / 4.0];
    let got = significant(&spec);
    assert_eq!(got.len(), 4);
    let mut want = expected.to_vec();
    want.sort_by(|a, b| b.total_cmp(a));
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() < 1e-10);
    }
    assert_eq!(spec.negative_count(), 1);
}

#[test]
fn rho0_has_one_negative_eigenvalue_for_all_alpha() {
    for k in 0..=30 {
        let alpha = C64::from_polar(0.1 * k as f64, 0.37 * k as f64);
        let pt = partial_transpose(&rho0_fixture(alpha, 3).unwrap());
        let spec = hermitian_spectrum(&pt).unwrap();
        assert_eq!(spec.negative_count(), 1, "alpha={alpha}");
        assert!(((1.0 + 2.0 * spec.negativity()).log2() - ep_spacs_closed(alpha)).abs() < 1e-12);
    }
}

#[test]
fn multi_photon_pipeline_matches_schmidt_oracle() {
    for m in [2, 3] {
        for a in [0.2, 1.0, 2.5] {
            let spec = pacs(C64::new(a, 0.0), m);
            let psi = split_on_beam_splitter(&spec.ket().unwrap().unwrap());
            let oracle = schmidt_ep_pure(&psi).unwrap();
            assert!((pipeline_ep(&spec) - oracle).abs() < 1e-8, "m={m} alpha={a}");
        }
    }
}

#[test]
fn fock_states_against_schmidt_sum() {
    let space = FockSpace::new(6).unwrap();
    let one = entanglement_potential(&fock_state(space, 1).unwrap().projector()).unwrap();
    assert!((one.ep_bits - 1.0).abs() < 1e-9);
    let two = entanglement_potential(&fock_state(space, 2).unwrap().projector()).unwrap();
    assert!((two.ep_bits - ((6.0 + 4.0 * SQRT_2) / 4.0).log2()).abs() < 1e-8);
    // |n⟩ splits binomially, so ‖·‖₁ = (Σᵢ √C(n,i)/2ⁿ)²
    for n in 3..6 {
        let sum: f64 = (0..=n).map(|i| (binom(n, i) / 2f64.powi(n as i32)).sqrt()).sum();
        let ep = entanglement_potential(&fock_state(space, n).unwrap().projector()).unwrap().ep_bits;
        assert!((ep - (sum * sum).log2()).abs() < 1e-8, "n={n}");
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[test]
fn classical_inputs_stay_separable() {
    for a in [0.0, 0.5, 1.7, 2.2] {
        let spec = StateSpec::new(Family::Coherent { alpha: C64::from_polar(a, 0.4) }).unwrap();
        assert!(pipeline_ep(&spec).abs() < 1e-9);
    }
    for x in [0.0, 0.1, 0.3, 0.5] {
        let spec = StateSpec::new(Family::Thermal { x }).unwrap();
        assert!(pipeline_ep(&spec).abs() < 1e-9);
    }
}

#[test]
fn photon_added_thermal_ep_falls_with_temperature() {
    let values: Vec<f64> = (0..=10)
        .map(|k| pipeline_ep(&StateSpec::new(Family::PaThermal { x: 0.025 * k as f64 }).unwrap()))
        .collect();
    assert!((values[0] - 1.0).abs() < 1e-9);
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

#[test]
fn mixing_preserves_trace_and_hermiticity() {
    let sigma = StateSpec::new(Family::PaThermal { x: 0.3 }).unwrap().density().unwrap();
    let out = mix_with_vacuum(&sigma).unwrap();
    assert!((out.trace() - 1.0).abs() < 1e-10);
    let s = pt_spectrum(&sigma).unwrap();
    assert!((s.sum() - 1.0).abs() < 1e-8);
}
