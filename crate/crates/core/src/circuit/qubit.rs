//! Dense state-vector simulation on `n` qubits, qubit 0 most significant.

use nalgebra::{DMatrix, Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::C64;

/// Largest register simulated densely.
pub const MAX_QUBITS: usize = 14;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::QubitLimit { n, max: MAX_QUBITS })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegister {
    n: usize,
    amps: Vec<C64>,
}

impl QubitRegister {
    /// `|j>`: every qubit in `|0>` except qubit `j`.
    pub fn single_excitation(n: usize, j: usize) -> Result<Self> {
        check_size(n)?;
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n_nodes: n });
        }
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[Self::excitation_index(n, j)] = C64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    fn excitation_index(n: usize, k: usize) -> usize {
        1 << (n - 1 - k)
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Applies a 4x4 gate on `(qa, qb)`, `qa` the more significant local bit.
    pub fn apply_two(&mut self, qa: usize, qb: usize, m: &Matrix4<C64>) {
        let (ma, mb) = (self.mask(qa), self.mask(qb));
        for base in 0..self.amps.len() {
            if base & (ma | mb) != 0 {
                continue;
            }
            let idx = [base, base | mb, base | ma, base | ma | mb];
            let v = idx.map(|k| self.amps[k]);
            for r in 0..4 {
                self.amps[idx[r]] = (0..4).map(|c| m[(r, c)] * v[c]).sum();
            }
        }
    }

    /// Applies a diagonal single-qubit gate.
    pub fn apply_diag(&mut self, q: usize, m: &Matrix2<C64>) {
        let mask = self.mask(q);
        for (k, a) in self.amps.iter_mut().enumerate() {
            *a *= if k & mask == 0 { m[(0, 0)] } else { m[(1, 1)] };
        }
    }

    /// Amplitude on `|k>`.
    pub fn excitation_amplitude(&self, k: usize) -> C64 {
        self.amps[Self::excitation_index(self.n, k)]
    }

    /// Probability weight outside the single-excitation subspace.
    pub fn leakage(&self) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(k, _)| k.count_ones() != 1)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Result of running a circuit on every single-excitation input.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleExcitationRun {
    /// `block[(i, j)] = <i| C |j>` restricted to single-excitation states.
    pub block: DMatrix<C64>,
    /// Leakage per input `|j>`.
    pub leakage: Vec<f64>,
}

impl SingleExcitationRun {
    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().copied().fold(0.0, f64::max)
    }
}

/// Runs `apply` on each `|j>` and collects the single-excitation block.
pub(crate) fn run_single_excitations(
    n: usize,
    apply: impl Fn(&mut QubitRegister),
) -> Result<SingleExcitationRun> {
    check_size(n)?;
    let mut block = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    let mut leakage = Vec::with_capacity(n);
    for j in 0..n {
        let mut reg = QubitRegister::single_excitation(n, j)?;
        apply(&mut reg);
        for i in 0..n {
            block[(i, j)] = reg.excitation_amplitude(i);
        }
        leakage.push(reg.leakage());
    }
    Ok(SingleExcitationRun { block, leakage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateSpec;

    #[test]
    fn excitation_layout() {
        let reg = QubitRegister::single_excitation(3, 0).unwrap();
        assert_eq!(reg.amplitudes()[0b100], C64::new(1.0, 0.0));
        assert_eq!(reg.leakage(), 0.0);
        assert!(QubitRegister::single_excitation(15, 0).is_err());
        assert!(QubitRegister::single_excitation(3, 3).is_err());
    }

    #[test]
    fn non_adjacent_gate_matches_node_block() {
        let g = GateSpec::new(3, 1, 0.4, 0.9).unwrap();
        let m = g.qubit_matrix();
        let run = run_single_excitations(4, |r| r.apply_two(g.i, g.j, &m)).unwrap();
        let b = g.node_block();
        assert!((run.block[(3, 3)] - b[(0, 0)]).norm() < 1e-15);
        assert!((run.block[(3, 1)] - b[(0, 1)]).norm() < 1e-15);
        assert!((run.block[(1, 3)] - b[(1, 0)]).norm() < 1e-15);
        assert!((run.block[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(run.max_leakage() < 1e-30);
    }
}
