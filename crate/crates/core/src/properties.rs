//! Seeded invariant suite covering graphs, symmetry, propagators and circuits.
//!
//! Every property draws from its own random stream, so adding trials to one
//! property does not change the inputs of another.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{
    apply_circuit, excitation_preservation_check, fuse_z_rotations, rz_decompose,
    three_cycle_circuit, trotter_error, GateSpec, PalindromicCircuit, Space,
};
use crate::graph::WalkHamiltonian;
use crate::linalg::max_abs_diff;
use crate::propagator::{propagate, Evolver};
use crate::random;
use crate::symmetry::{
    apply_gauge, bipartite_negation_gauge, cycle_flux, default_pts_times, eq1_residual_max,
    is_bipartite, pts_numeric, wrap_phase, Bipartiteness,
};
use crate::{NumericConfig, C64};

/// How the worst residual is compared to the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Passes when `worst <= bound`.
    AtMost,
    /// Passes when `worst >= bound`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub worst: f64,
    pub bound: f64,
    pub kind: Bound,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        match self.kind {
            Bound::AtMost => self.worst <= self.bound,
            Bound::AtLeast => self.worst >= self.bound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Base trial count; individual properties scale it.
    pub trials: usize,
    /// Flip the sign of one gate phase in the flux-dependence check.
    pub inject_fault: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn render(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "# seed={} trials={} inject_fault={}\nproperty,trials,worst,bound,status\n",
            c.seed, c.trials, c.inject_fault
        );
        for o in &self.outcomes {
            let op = match o.kind {
                Bound::AtMost => "<=",
                Bound::AtLeast => ">=",
            };
            let status = if o.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{},{},{:.6e},{op}{:.1e},{status}", o.name, o.trials, o.worst, o.bound);
        }
        out
    }
}

type Property = fn(&mut ChaCha8Rng, usize, bool) -> PropertyOutcome;

const PROPERTIES: &[Property] = &[
    gauge_invariance,
    forest_pts,
    bipartite_pts,
    non_bipartite_asymmetry,
    forest_phase_independence,
    eq1_equivalence,
    negation_time_reversal,
    flux_gauge_invariance,
    unitarity,
    group_property,
    spectral_shift,
    eq3_identity,
    gate_embedding,
    palindrome_amplitude_symmetry,
    spanning_tree_circuit_pts,
    bipartite_circuit_pts,
    flux_dependence,
    reflection_in_theta,
    excitation_preservation,
    z_rotation_fusion,
    trotter_order,
];

pub fn run_suite(config: SuiteConfig) -> SuiteReport {
    let outcomes = PROPERTIES
        .iter()
        .enumerate()
        .map(|(k, p)| p(&mut random::rng(config.seed, k as u64), config.trials, config.inject_fault))
        .collect();
    SuiteReport { config, outcomes }
}

fn at_most(name: &'static str, trials: usize, worst: f64, bound: f64) -> PropertyOutcome {
    PropertyOutcome {
        name,
        trials,
        worst,
        bound,
        kind: Bound::AtMost,
    }
}

fn probabilities(u: &DMatrix<C64>) -> DMatrix<f64> {
    u.map(|z| z.norm_sqr())
}

fn prob_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (probabilities(a) - probabilities(b)).amax()
}

fn pts_defect(u: &DMatrix<C64>) -> f64 {
    let p = probabilities(u);
    (&p - p.transpose()).amax()
}

fn time(rng: &mut impl Rng) -> f64 {
    rng.random_range(-6.0..6.0)
}

fn gauge_invariance(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let n_trials = 2 * trials;
    let mut worst = 0.0f64;
    for _ in 0..n_trials {
        let n = rng.random_range(1..=8);
        let h = random::hamiltonian(rng, n);
        let g = random::gauge(rng, n);
        let t = time(rng);
        let h2 = apply_gauge(&h, &g).expect("matching size");
        worst = worst.max(prob_diff(propagate(&h, t).matrix(), propagate(&h2, t).matrix()));
    }
    at_most("gauge_invariance", n_trials, worst, 1e-12)
}

fn sampled_pts(h: &WalkHamiltonian) -> f64 {
    let times = default_pts_times(h, &NumericConfig::default());
    pts_numeric(h, &times, 1e-9).expect("nonempty times").residual
}

fn forest_pts(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(1..=12);
        worst = worst.max(sampled_pts(&random::forest(rng, n)));
    }
    at_most("forest_pts", trials, worst, 1e-9)
}

fn bipartite_pts(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=12);
        worst = worst.max(sampled_pts(&random::bipartite(rng, n)));
    }
    at_most("bipartite_pts", trials, worst, 1e-9)
}

/// Fraction of random odd-cycle graphs whose sampled residual exceeds 1e-3.
fn non_bipartite_asymmetry(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut hits = 0;
    for _ in 0..trials {
        let n = rng.random_range(3..=12);
        if sampled_pts(&random::non_bipartite(rng, n)) > 1e-3 {
            hits += 1;
        }
    }
    PropertyOutcome {
        name: "non_bipartite_asymmetry_fraction",
        trials,
        worst: hits as f64 / trials.max(1) as f64,
        bound: 0.95,
        kind: Bound::AtLeast,
    }
}

fn forest_phase_independence(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(1..=10);
        let h = random::forest(rng, n);
        let t = time(rng);
        worst = worst.max(prob_diff(propagate(&h, t).matrix(), propagate(&h.phases_zeroed(), t).matrix()));
    }
    at_most("forest_phase_independence", trials, worst, 1e-10)
}

/// `|U_ij|^2 - |U_ji|^2 = 2 (sinh_ji cosh_ij - sinh_ij cosh_ji)`.
fn eq1_equivalence(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let h = random::hamiltonian(rng, n);
        let t = time(rng);
        let ev = Evolver::new(&h);
        let u = ev.propagator(t).into_matrix();
        worst = worst.max((2.0 * eq1_residual_max(&ev, t) - pts_defect(&u)).abs());
    }
    at_most("eq1_equivalence", trials, worst, 1e-12)
}

fn negation_time_reversal(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=10);
        let h = random::bipartite(rng, n);
        let g = bipartite_negation_gauge(&h).expect("bipartite with zero diagonal");
        let t = time(rng);
        let mut u = propagate(&h, t).into_matrix();
        for r in 0..n {
            for c in 0..n {
                u[(r, c)] *= g.factor(r).conj() * g.factor(c);
            }
        }
        worst = worst.max(max_abs_diff(&u, propagate(&h, -t).matrix()));
    }
    at_most("negation_time_reversal", trials, worst, 1e-10)
}

fn flux_gauge_invariance(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(3..=10);
        let h = random::non_bipartite(rng, n);
        let Bipartiteness::OddCycle { cycle } = is_bipartite(&h.skeleton()) else {
            unreachable!("generator plants an odd cycle");
        };
        let h2 = apply_gauge(&h, &random::gauge(rng, n)).expect("matching size");
        let (a, b) = (cycle_flux(&h, &cycle).unwrap(), cycle_flux(&h2, &cycle).unwrap());
        worst = worst.max(wrap_phase(a - b).abs());
    }
    at_most("flux_gauge_invariance", trials, worst, 1e-12)
}

fn unitarity(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(1..=12);
        let h = random::hamiltonian(rng, n);
        worst = worst.max(propagate(&h, 10.0 * time(rng)).unitarity_defect());
    }
    at_most("unitarity", trials, worst, 1e-10)
}

fn group_property(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(1..=8);
        let h = random::hamiltonian(rng, n);
        let (t1, t2) = (time(rng), time(rng));
        let ev = Evolver::new(&h);
        let prod = ev.propagator(t1).into_matrix() * ev.propagator(t2).into_matrix();
        worst = worst.max(max_abs_diff(&prod, ev.propagator(t1 + t2).matrix()));
    }
    at_most("group_property", trials, worst, 1e-10)
}

fn spectral_shift(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(1..=8);
        let h = random::hamiltonian(rng, n);
        let t = time(rng);
        let shift = rng.random_range(-5.0..5.0);
        worst = worst.max(prob_diff(propagate(&h, t).matrix(), propagate(&h.shifted(shift), t).matrix()));
    }
    at_most("spectral_shift", trials, worst, 1e-10)
}

fn random_gate(rng: &mut impl Rng) -> GateSpec {
    GateSpec::new(0, 1, rng.random_range(-PI..PI), rng.random_range(-PI..PI)).expect("valid")
}

fn eq3_identity(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let g = random_gate(rng);
        let d = rz_decompose(&g).compose() - g.qubit_matrix();
        worst = worst.max(d.iter().fold(0.0, |m, z| m.max(z.norm())));
    }
    at_most("eq3_identity", trials, worst, 1e-12)
}

fn gate_embedding(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let g = random_gate(rng);
        let (m, b) = (g.qubit_matrix(), g.node_block());
        let idx = [2, 1];
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((m[(idx[r], idx[c])] - b[(r, c)]).norm());
            }
        }
    }
    at_most("gate_embedding", trials, worst, 1e-12)
}

fn node_unitary(c: &PalindromicCircuit) -> DMatrix<C64> {
    apply_circuit(c, Space::Node).expect("node space").into_matrix()
}

fn palindrome_amplitude_symmetry(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let gates = rng.random_range(1..=8);
        let u = node_unitary(&random::palindrome(rng, n, gates, false));
        worst = worst.max(max_abs_diff(&u, &u.transpose()));
    }
    at_most("palindrome_amplitude_symmetry", trials, worst, 1e-12)
}

fn spanning_tree_circuit_pts(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        worst = worst.max(pts_defect(&node_unitary(&random::tree_circuit(rng, n))));
    }
    at_most("spanning_tree_circuit_pts", trials, worst, 1e-10)
}

fn bipartite_circuit_pts(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=8);
        let gates = rng.random_range(1..=10);
        worst = worst.max(pts_defect(&node_unitary(&random::bipartite_circuit(rng, n, gates))));
    }
    at_most("bipartite_circuit_pts", trials, worst, 1e-10)
}

/// Three-node palindrome with per-gate phases.
fn cycle_circuit(phases: [f64; 3], theta: f64) -> PalindromicCircuit {
    let pairs = [(0, 1), (1, 2), (2, 0)];
    let half = pairs
        .iter()
        .zip(phases)
        .map(|(&(i, j), a)| GateSpec::new(i, j, a, theta).expect("valid"))
        .collect();
    crate::circuit::build_palindrome(half, 3).expect("valid")
}

/// Probabilities depend on the per-gate phases only through their sum.
fn flux_dependence(rng: &mut ChaCha8Rng, trials: usize, inject_fault: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let alpha = rng.random_range(-PI..PI);
        let a1 = rng.random_range(0.3..2.8) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let a2 = rng.random_range(-PI..PI);
        let mut split = [a1, a2, 3.0 * alpha - a1 - a2];
        if inject_fault {
            split[0] = -split[0];
        }
        for k in 0..37 {
            let theta = -PI + k as f64 * PI / 18.0;
            let u = node_unitary(&three_cycle_circuit(alpha, theta).expect("valid"));
            let v = node_unitary(&cycle_circuit(split, theta));
            worst = worst.max(prob_diff(&u, &v));
        }
    }
    at_most("flux_dependence", trials, worst, 1e-10)
}

fn reflection_in_theta(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let (alpha, theta) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let u = node_unitary(&three_cycle_circuit(alpha + PI, theta).expect("valid"));
        let v = node_unitary(&three_cycle_circuit(alpha, -theta).expect("valid"));
        worst = worst.max(prob_diff(&u, &v));
    }
    at_most("reflection_in_theta", trials, worst, 1e-12)
}

fn excitation_preservation(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = rng.random_range(2..=6);
        let gates = rng.random_range(1..=6);
        let c = random::palindrome(rng, n, gates, true);
        worst = worst.max(excitation_preservation_check(&c).expect("small register"));
    }
    at_most("excitation_preservation", trials, worst, 1e-12)
}

/// Fused odd rings reproduce the circuit and keep a single rotation pair.
fn z_rotation_fusion(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n = [3, 5, 7][rng.random_range(0..3)];
        let (alpha, theta) = (rng.random_range(0.1..1.0), rng.random_range(-PI..PI));
        let half = (0..n)
            .map(|k| GateSpec::new(k, (k + 1) % n, alpha, theta).expect("valid"))
            .collect();
        let c = crate::circuit::build_palindrome(half, n).expect("valid");
        let f = fuse_z_rotations(&c);
        let d = max_abs_diff(&f.node_unitary(), &node_unitary(&c));
        // A count other than one pair is reported as an infinite residual.
        worst = worst.max(if f.rotation_count() == 2 { d } else { f64::INFINITY });
    }
    at_most("z_rotation_fusion", trials, worst, 1e-12)
}

/// Distance of `error(theta) / error(theta / 2)` from the Strang value 8.
fn trotter_order(rng: &mut ChaCha8Rng, trials: usize, _: bool) -> PropertyOutcome {
    let n_trials = (trials / 10).max(1);
    let mut worst = 0.0f64;
    for _ in 0..n_trials {
        let h = WalkHamiltonian::ring(3, 1.0, rng.random_range(-PI..PI)).expect("ring");
        for theta in [0.1, 0.05] {
            let r = trotter_error(&h, theta).unwrap() / trotter_error(&h, theta / 2.0).unwrap();
            worst = worst.max((r - 8.0).abs());
        }
    }
    at_most("trotter_order_ratio_minus_8", n_trials, worst, 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_fault_is_caught() {
        let cfg = SuiteConfig {
            seed: 11,
            trials: 10,
            inject_fault: false,
        };
        let report = run_suite(cfg);
        assert!(report.all_passed(), "{}", report.render());
        let faulty = run_suite(SuiteConfig {
            inject_fault: true,
            ..cfg
        });
        let failed: Vec<_> = faulty.failures().map(|o| o.name).collect();
        assert_eq!(failed, vec!["flux_dependence"]);
        assert!(faulty.render().starts_with("# seed=11 trials=10 inject_fault=true\n"));
    }
}
