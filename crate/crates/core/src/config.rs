//! Numerical tolerances and sampling constants.
//!
//! Every threshold the library applies lives in [`NumericConfig`]. The
//! `*_with` variants of the public operations accept an explicit config;
//! everything else uses [`NumericConfig::default`].

/// Tolerances and grid sizes used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    /// Max entrywise `|M_ij - conj(M_ji)|` accepted by the eigensolver.
    pub hermitian_tol: f64,
    /// Shifted self-energy above which a node carries a self-edge.
    pub self_edge_tol: f64,
    /// Max-norm bound on `U^dagger U - I` for a propagator.
    pub unitarity_tol: f64,
    /// Bound on `|sum_i p_ij - 1|` for every transport table column.
    pub normalization_tol: f64,
    /// Residual at or below which sampled probabilities count as time-symmetric.
    pub pts_tol: f64,
    /// Number of sample times used by the default probability symmetry test.
    pub pts_samples: usize,
    /// Coarse grid size for [`crate::propagator::max_transfer`].
    pub transfer_grid: usize,
    /// Bracket width at which golden-section refinement stops.
    pub transfer_refine_dt: f64,
    /// Phases below this magnitude are treated as zero when fusing rotations.
    pub phase_zero_tol: f64,
}

impl NumericConfig {
    pub const DEFAULT: NumericConfig = NumericConfig {
        hermitian_tol: 1e-12,
        self_edge_tol: 1e-12,
        unitarity_tol: 1e-10,
        normalization_tol: 1e-9,
        pts_tol: 1e-9,
        pts_samples: 64,
        transfer_grid: 4096,
        transfer_refine_dt: 1e-8,
        phase_zero_tol: 1e-15,
    };
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self::DEFAULT
    }
}
