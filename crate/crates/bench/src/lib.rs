//! Fixtures shared by the benchmarks.

use chiralwalk::{WalkHamiltonian, Result};

/// Ring of `n` nodes with a uniform chiral phase per link.
pub fn chiral_ring(n: usize) -> Result<WalkHamiltonian> {
    WalkHamiltonian::ring(n, 1.0, std::f64::consts::FRAC_PI_2 / n as f64)
}

/// `count` evenly spaced points on `[start, end]`.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|k| start + (end - start) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}
