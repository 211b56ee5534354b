//! Cross-checks against values computed independently of the spectral path.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use chiralwalk::circuit::{apply_circuit, Space};
use chiralwalk::linalg::max_abs_diff;
use chiralwalk::{circuit_sweep, propagate, random, three_cycle_circuit, WalkHamiltonian, C64};

/// `exp(-iHt)` by Taylor series with scaling and squaring.
fn taylor_expm(h: &WalkHamiltonian, t: f64) -> DMatrix<C64> {
    let n = h.n_nodes();
    let m = h.to_dense() * C64::new(0.0, -t);
    let norm = m.iter().map(|z| z.norm()).sum::<f64>();
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let scaled = m * C64::new(0.5f64.powi(squarings), 0.0);
    let mut term = DMatrix::<C64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..40 {
        term = &term * &scaled * C64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[test]
fn spectral_propagator_matches_taylor_oracle() {
    let mut rng = random::rng(42, 0);
    for case in 0..50 {
        let n = 1 + case % 9;
        let h = random::hamiltonian(&mut rng, n);
        let t = -5.0 + 10.0 * (case as f64 + 0.5) / 50.0;
        let d = max_abs_diff(propagate(&h, t).matrix(), &taylor_expm(&h, t));
        assert!(d <= 1e-8, "case {case}: {d:e}");
    }
}

#[test]
fn circulant_three_cycle_closed_form() {
    // Eigenvalues 2 cos(alpha + 2 pi k / 3) on Fourier modes.
    for alpha in [0.0, 0.4, PI / 2.0] {
        let h = WalkHamiltonian::ring(3, 1.0, alpha).unwrap();
        for t in [0.3, 1.2092, 2.7] {
            let amp: C64 = (0..3)
                .map(|k| {
                    let q = 2.0 * PI * k as f64 / 3.0;
                    let e = 2.0 * (alpha + q).cos();
                    // <2| psi_k><psi_k |0> = e^{i q 2} / 3
                    C64::from_polar(1.0 / 3.0, -e * t + 2.0 * q)
                })
                .sum();
            let p = propagate(&h, t).matrix()[(2, 0)].norm_sqr();
            assert!((p - amp.norm_sqr()).abs() < 1e-12, "alpha {alpha} t {t}");
        }
    }
}

/// Values frozen from a qubit-space `expm` oracle of the six-gate circuit.
#[test]
fn frozen_circuit_values() {
    let grid: Vec<f64> = (0..37).map(|k| -PI + k as f64 * PI / 18.0).collect();
    let table = circuit_sweep(&[0.0], &grid, three_cycle_circuit).unwrap();
    assert!((table.max_transfer(0, 1).1 - 0.28417968750000033).abs() < 1e-12);
    assert!((table.max_transfer(0, 2).1 - 0.5273437500000003).abs() < 1e-12);

    let table = circuit_sweep(&[PI / 2.0], &grid, three_cycle_circuit).unwrap();
    assert!((table.max_transfer(0, 2).1 - 0.94921875).abs() < 1e-9);
    assert!((table.max_transfer(0, 1).1 - 0.9450816352003336).abs() < 1e-12);

    let p = |a: f64, t: f64| {
        apply_circuit(&three_cycle_circuit(a, t).unwrap(), Space::Node)
            .unwrap()
            .transition_probability(0, 2)
            .unwrap()
    };
    // Largest transfer over the whole (alpha, theta) plane.
    let fine = (0..20_001)
        .map(|k| p(PI / 2.0, -PI + 2.0 * PI * k as f64 / 20_000.0))
        .fold(0.0f64, f64::max);
    assert!((fine - 0.9872628780513295).abs() < 1e-6);
    assert!(fine < 0.999);
}
