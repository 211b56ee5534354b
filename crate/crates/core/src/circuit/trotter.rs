//! Second-order (Strang) product circuits for uniform-magnitude Hamiltonians.

use super::{apply_circuit, build_palindrome, GateSpec, PalindromicCircuit, Space};
use crate::error::{Error, Result};
use crate::graph::WalkHamiltonian;
use crate::linalg::max_abs_diff;
use crate::propagator::propagate;
use crate::C64;

fn common_magnitude(h: &WalkHamiltonian) -> Result<f64> {
    let mut edges = h.edges().iter();
    let Some(first) = edges.next() else {
        return Ok(1.0);
    };
    for e in edges {
        if e.h != first.h {
            return Err(Error::NonUniformMagnitude {
                first: first.h,
                other: e.h,
            });
        }
    }
    Ok(first.h)
}

/// One gate `exp(-i H_e t / 2)` per edge, mirrored: `theta = h t`.
pub fn trotter_circuit(h: &WalkHamiltonian, theta: f64) -> Result<PalindromicCircuit> {
    common_magnitude(h)?;
    if !h.uniform_diagonal() {
        return Err(Error::UnequalSelfEnergies);
    }
    let half = h
        .edges()
        .iter()
        .map(|e| GateSpec::for_coupling(e.i, e.j, e.alpha, theta / 2.0))
        .collect::<Result<Vec<_>>>()?;
    build_palindrome(half, h.n_nodes())
}

/// `max |U_circuit(theta) - e^{-iHt}|` with `t = theta / h`; the uniform
/// diagonal enters as a global phase.
pub fn trotter_error(h: &WalkHamiltonian, theta: f64) -> Result<f64> {
    let mag = common_magnitude(h)?;
    trotter_error_at_time(h, theta / mag)
}

/// [`trotter_error`] parameterised by the evolution time.
pub fn trotter_error_at_time(h: &WalkHamiltonian, t: f64) -> Result<f64> {
    let mag = common_magnitude(h)?;
    let circuit = trotter_circuit(h, mag * t)?;
    let diag = h.self_energies().first().copied().unwrap_or(0.0);
    let u = apply_circuit(&circuit, Space::Node)?.into_matrix() * C64::from_polar(1.0, -diag * t);
    Ok(max_abs_diff(&u, propagate(h, t).matrix()))
}
