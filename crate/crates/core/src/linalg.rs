//! Dense complex linear algebra helpers.

use nalgebra::{DMatrix, DVector};

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::C64;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    /// Orthonormal eigenvectors stored as columns.
    pub eigenvectors: DMatrix<C64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V f(D) V^dagger` for a diagonal function of the spectrum.
    pub fn apply_fn(&self, f: impl Fn(f64) -> C64) -> DMatrix<C64> {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= f(self.eigenvalues[k]);
        }
        scaled * v.adjoint()
    }

    /// `exp(-i H t)`.
    pub fn evolution(&self, t: f64) -> DMatrix<C64> {
        self.apply_fn(|e| C64::from_polar(1.0, -e * t))
    }

    pub fn reconstruct(&self) -> DMatrix<C64> {
        self.apply_fn(|e| C64::new(e, 0.0))
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |m, e| m.max(e.abs()))
    }

    /// Half the spread of the spectrum; the spectral norm of `H - cI` for the
    /// best constant `c`.
    pub fn half_width(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 0.0;
        }
        0.5 * (self.eigenvalues[n - 1] - self.eigenvalues[0])
    }
}

/// Max entrywise `|M_ij - conj(M_ji)|`.
pub fn hermitian_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |A_ij - B_ij|`.
pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// `max |(U^dagger U - I)_ij|`.
pub fn unitarity_defect(u: &DMatrix<C64>) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u.adjoint() * u), &DMatrix::identity(n, n))
}

/// Hermitian eigendecomposition with eigenvalues sorted ascending.
pub fn eig_hermitian(m: &DMatrix<C64>) -> Result<SpectralDecomposition> {
    eig_hermitian_with(m, &NumericConfig::default())
}

pub fn eig_hermitian_with(m: &DMatrix<C64>, cfg: &NumericConfig) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let asymmetry = hermitian_defect(m);
    if asymmetry > cfg.hermitian_tol {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: DVector::zeros(0),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the solver's column order inside degenerate blocks.
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WalkHamiltonian;
    use std::f64::consts::PI;

    fn assert_spectrum(m: &DMatrix<C64>, want: &[f64]) {
        let d = eig_hermitian(m).unwrap();
        for (got, want) in d.eigenvalues.iter().zip(want) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        let scale = max_abs(m).max(1.0);
        assert!(max_abs_diff(&d.reconstruct(), m) <= 1e-10 * scale);
        assert!(unitarity_defect(&d.eigenvectors) <= 1e-10);
    }

    #[test]
    fn pauli_x() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
        );
        assert_spectrum(&m, &[-1.0, 1.0]);
    }

    #[test]
    fn three_cycle_spectra() {
        // Circulant eigenvalues 2 cos(2 pi k / 3 + alpha), k = 0, 1, 2.
        let real = WalkHamiltonian::ring(3, 1.0, 0.0).unwrap().to_dense();
        assert_spectrum(&real, &[-1.0, -1.0, 2.0]);
        let chiral = WalkHamiltonian::ring(3, 1.0, PI / 2.0).unwrap().to_dense();
        let r3 = 3f64.sqrt();
        assert_spectrum(&chiral, &[-r3, 0.0, r3]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = WalkHamiltonian::ring(3, 1.0, 0.3).unwrap().to_dense();
        m[(0, 1)] += C64::new(1e-6, 0.0);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
        let rect = DMatrix::from_element(2, 3, C64::new(0.0, 0.0));
        assert!(matches!(eig_hermitian(&rect), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn deterministic() {
        let m = WalkHamiltonian::ring(6, 0.7, 0.2).unwrap().to_dense();
        assert_eq!(eig_hermitian(&m).unwrap(), eig_hermitian(&m).unwrap());
    }
}
