use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::C64;

/// Two-site gate `U^(ij)(alpha, theta) = exp(-i [cos(alpha) S + sin(alpha) A] theta / 2)`
/// with `S = X_i X_j + Y_i Y_j` and `A = X_i Y_j - Y_i X_j`.
///
/// On node space (single excitation, `|k>` = qubit `k` excited) the gate is
/// `exp(-i theta K)` with `K = e^{-i alpha} |i><j| + e^{i alpha} |j><i|`, i.e.
/// the block
///
/// ```text
/// [ cos(theta)                      -i e^{-i alpha} sin(theta) ]
/// [ -i e^{i alpha} sin(theta)        cos(theta)                ]
/// ```
///
/// in the ordered basis `(|i>, |j>)`. A gate on `(i, j)` with `alpha` equals
/// the gate on `(j, i)` with `-alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateSpec {
    pub i: usize,
    pub j: usize,
    pub alpha: f64,
    pub theta: f64,
}

impl GateSpec {
    pub fn new(i: usize, j: usize, alpha: f64, theta: f64) -> Result<Self> {
        if i == j {
            return Err(Error::SelfLoopEdge { i });
        }
        for (what, value) in [("gate phase", alpha), ("gate angle", theta)] {
            if !value.is_finite() {
                return Err(Error::InvalidValue { what, value });
            }
        }
        Ok(Self { i, j, alpha, theta })
    }

    /// Gate `exp(-i theta K)` with coupling `K_ij = e^{i phase}`, the
    /// Hamiltonian-edge convention of [`crate::graph::Edge`].
    pub fn for_coupling(i: usize, j: usize, phase: f64, theta: f64) -> Result<Self> {
        Self::new(i, j, -phase + 0.0, theta)
    }

    /// Same gate with `alpha = 0`.
    pub fn symmetric(&self) -> Self {
        Self { alpha: 0.0, ..*self }
    }

    /// Node-space 2x2 block in the basis `(|i>, |j>)`.
    pub fn node_block(&self) -> Matrix2<C64> {
        let (s, c) = self.theta.sin_cos();
        let minus_i = C64::new(0.0, -1.0);
        Matrix2::new(
            C64::new(c, 0.0),
            minus_i * C64::from_polar(s, -self.alpha),
            minus_i * C64::from_polar(s, self.alpha),
            C64::new(c, 0.0),
        )
    }

    /// Dense 4x4 gate on qubits `(i, j)`, basis `|q_i q_j>` with `q_i` the
    /// more significant bit:
    /// `(1 + ZZ + cos(theta)(1 - ZZ) - i sin(theta)(cos(alpha) S + sin(alpha) A)) / 2`.
    pub fn qubit_matrix(&self) -> Matrix4<C64> {
        let p = Paulis::new();
        let id = Matrix4::<C64>::identity();
        let zz = p.z.kronecker(&p.z);
        let s = p.x.kronecker(&p.x) + p.y.kronecker(&p.y);
        let a = p.x.kronecker(&p.y) - p.y.kronecker(&p.x);
        let (sin_t, cos_t) = self.theta.sin_cos();
        let (sin_a, cos_a) = self.alpha.sin_cos();
        let gen = s * C64::new(cos_a, 0.0) + a * C64::new(sin_a, 0.0);
        (id + zz + (id - zz) * C64::new(cos_t, 0.0) - gen * C64::new(0.0, sin_t)) * C64::new(0.5, 0.0)
    }
}

pub(crate) struct Paulis {
    pub x: Matrix2<C64>,
    pub y: Matrix2<C64>,
    pub z: Matrix2<C64>,
}

impl Paulis {
    pub fn new() -> Self {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        Self {
            x: Matrix2::new(o, l, l, o),
            y: Matrix2::new(o, -i, i, o),
            z: Matrix2::new(l, o, o, -l),
        }
    }
}

/// `R_z(angle) = exp(-i angle Z / 2)`.
pub fn rz(angle: f64) -> Matrix2<C64> {
    let o = C64::new(0.0, 0.0);
    Matrix2::new(
        C64::from_polar(1.0, -angle / 2.0),
        o,
        o,
        C64::from_polar(1.0, angle / 2.0),
    )
}

/// `U^(ij)(alpha, theta) = R_z^(j)(alpha) U^(ij)(0, theta) R_z^(j)(alpha)^dagger`,
/// stored as its three factors (4x4, same basis as [`GateSpec::qubit_matrix`]).
#[derive(Debug, Clone, PartialEq)]
pub struct RzDecomposition {
    /// `R_z(alpha)` on qubit `j`.
    pub pre: Matrix4<C64>,
    /// The gate with `alpha = 0`.
    pub symmetric: GateSpec,
    /// `R_z(alpha)^dagger` on qubit `j`.
    pub post: Matrix4<C64>,
}

impl RzDecomposition {
    /// Operator product `pre * U(0, theta) * post`.
    pub fn compose(&self) -> Matrix4<C64> {
        self.pre * self.symmetric.qubit_matrix() * self.post
    }
}

pub fn rz_decompose(g: &GateSpec) -> RzDecomposition {
    let id = Matrix2::<C64>::identity();
    let r = rz(g.alpha);
    RzDecomposition {
        pre: id.kronecker(&r),
        symmetric: g.symmetric(),
        post: id.kronecker(&r.adjoint()),
    }
}
