//! Exact evolution `U = exp(-i H t)` through the Hermitian eigendecomposition.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::circuit::GateSpec;
use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::graph::WalkHamiltonian;
use crate::linalg::{eig_hermitian, unitarity_defect, SpectralDecomposition};
use crate::table::{GridAxis, TransportTable};
use crate::C64;

/// Where a propagator came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Identity,
    Hamiltonian { t: f64 },
    Gate(GateSpec),
    Circuit { n_gates: usize },
}

/// Dense unitary acting on node space.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    matrix: DMatrix<C64>,
    provenance: Provenance,
}

impl Propagator {
    pub fn new(matrix: DMatrix<C64>, provenance: Provenance) -> Self {
        Self { matrix, provenance }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(DMatrix::identity(n, n), Provenance::Identity)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `|<to|U|from>|^2`.
    pub fn transition_probability(&self, from: usize, to: usize) -> Result<f64> {
        transition_probability(self, from, to)
    }

    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.matrix)
    }
}

/// Spectrum of a Hamiltonian, kept so that many times can be evaluated from
/// one decomposition.
#[derive(Debug, Clone)]
pub struct Evolver {
    spectrum: SpectralDecomposition,
}

impl Evolver {
    pub fn new(h: &WalkHamiltonian) -> Self {
        // `to_dense` is Hermitian by construction, so the check cannot fail.
        let spectrum = eig_hermitian(&h.to_dense()).expect("graph Hamiltonians are Hermitian");
        Self { spectrum }
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    /// `exp(-i H t)`; exactly the identity at `t = 0`.
    pub fn propagator(&self, t: f64) -> Propagator {
        let matrix = if t == 0.0 {
            DMatrix::identity(self.dim(), self.dim())
        } else {
            self.spectrum.evolution(t)
        };
        Propagator::new(matrix, Provenance::Hamiltonian { t })
    }

    /// Single amplitude `<to|exp(-i H t)|from>` in `O(N)`.
    pub fn amplitude(&self, t: f64, from: usize, to: usize) -> C64 {
        let v = &self.spectrum.eigenvectors;
        self.spectrum
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &e)| v[(to, k)] * C64::from_polar(1.0, -e * t) * v[(from, k)].conj())
            .sum()
    }
}

/// `U = exp(-i H t)`.
pub fn propagate(h: &WalkHamiltonian, t: f64) -> Propagator {
    Evolver::new(h).propagator(t)
}

/// `|<to|U|from>|^2`.
pub fn transition_probability(u: &Propagator, from: usize, to: usize) -> Result<f64> {
    let n = u.dim();
    for index in [from, to] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n_nodes: n });
        }
    }
    Ok(u.matrix[(to, from)].norm_sqr())
}

/// Transport table over a list of times, from a single eigendecomposition.
pub fn sweep_time(h: &WalkHamiltonian, times: &[f64]) -> Result<TransportTable> {
    if times.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let evolver = Evolver::new(h);
    let unitaries: Vec<DMatrix<C64>> = times
        .par_iter()
        .map(|&t| evolver.propagator(t).into_matrix())
        .collect();
    TransportTable::from_unitaries(GridAxis::Time(times.to_vec()), &unitaries)
}

/// Peak of a transition probability over a time window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferPeak {
    pub t: f64,
    pub probability: f64,
}

/// Maximises `p(from -> to, t)` over `[start, end]`: a uniform scan followed
/// by golden-section refinement around the best grid point.
pub fn max_transfer(
    h: &WalkHamiltonian,
    from: usize,
    to: usize,
    window: (f64, f64),
) -> Result<TransferPeak> {
    max_transfer_with(h, from, to, window, &NumericConfig::default())
}

pub fn max_transfer_with(
    h: &WalkHamiltonian,
    from: usize,
    to: usize,
    (start, end): (f64, f64),
    cfg: &NumericConfig,
) -> Result<TransferPeak> {
    if !(start.is_finite() && end.is_finite() && end > start) {
        return Err(Error::InvalidRange { start, end });
    }
    let n = h.n_nodes();
    for index in [from, to] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n_nodes: n });
        }
    }
    let evolver = Evolver::new(h);
    let p = |t: f64| evolver.amplitude(t, from, to).norm_sqr();

    let points = cfg.transfer_grid.max(2);
    let step = (end - start) / (points - 1) as f64;
    let at = |k: usize| if k == points - 1 { end } else { start + k as f64 * step };
    let (best_k, best_p) = (0..points)
        .map(|k| (k, p(at(k))))
        .fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b });

    let (t, prob) = golden_max(&p, at(best_k.saturating_sub(1)), at((best_k + 1).min(points - 1)), cfg.transfer_refine_dt);
    Ok(if prob >= best_p {
        TransferPeak { t, probability: prob }
    } else {
        TransferPeak {
            t: at(best_k),
            probability: best_p,
        }
    })
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
pub(crate) fn golden_max(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}
