//! Rewrites a circuit as symmetric gates plus as few z-rotations as a
//! spanning-forest gauge allows.
//!
//! Gates on a spanning forest of the support graph have their phases moved
//! into a diagonal frame `Lambda`, so `U = Lambda U' Lambda^dagger` with every
//! forest gate symmetric. Each remaining chord gate is split by the z-rotation
//! identity and rotations that meet across gates on other qubits are merged.
//! For odd rings built edge by edge the chord is the central gate, so one pair
//! of rotations survives.

use nalgebra::DMatrix;

use super::gate::rz;
use super::qubit::run_single_excitations;
use super::{apply_gate_rows, GateSpec, PalindromicCircuit};
use crate::error::Result;
use crate::symmetry::{wrap_phase, GaugePhase};
use crate::C64;

const PHASE_TOL: f64 = 1e-12;

/// One operation of a fused circuit, in application order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircuitOp {
    /// `U^(ij)(0, theta)`.
    Symmetric { i: usize, j: usize, theta: f64 },
    /// `R_z(angle)` on one qubit.
    Rz { qubit: usize, angle: f64 },
}

impl CircuitOp {
    fn touches(&self, q: usize) -> bool {
        match *self {
            CircuitOp::Symmetric { i, j, .. } => i == q || j == q,
            CircuitOp::Rz { qubit, .. } => qubit == q,
        }
    }
}

/// `U = Lambda (ops applied in order) Lambda^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedCircuit {
    pub n_nodes: usize,
    pub frame: GaugePhase,
    pub ops: Vec<CircuitOp>,
}

impl FusedCircuit {
    pub fn rotation_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, CircuitOp::Rz { .. }))
            .count()
    }

    pub fn symmetric_count(&self) -> usize {
        self.ops.len() - self.rotation_count()
    }

    /// Node-space unitary, frame included.
    pub fn node_unitary(&self) -> DMatrix<C64> {
        let n = self.n_nodes;
        let mut u = DMatrix::identity(n, n);
        for op in &self.ops {
            match *op {
                CircuitOp::Symmetric { i, j, theta } => {
                    apply_gate_rows(&mut u, &GateSpec { i, j, alpha: 0.0, theta })
                }
                CircuitOp::Rz { qubit, angle } => {
                    // On |k>: e^{-i angle/2}, except e^{+i angle/2} on |qubit>.
                    let r = rz(angle);
                    for row in 0..n {
                        let f = if row == qubit { r[(1, 1)] } else { r[(0, 0)] };
                        for c in 0..n {
                            u[(row, c)] *= f;
                        }
                    }
                }
            }
        }
        self.in_frame(u)
    }

    /// Single-excitation block of the qubit-space run, frame included.
    pub fn qubit_unitary(&self) -> Result<DMatrix<C64>> {
        let run = run_single_excitations(self.n_nodes, |reg| {
            for op in &self.ops {
                match *op {
                    CircuitOp::Symmetric { i, j, theta } => {
                        let m = GateSpec { i, j, alpha: 0.0, theta }.qubit_matrix();
                        reg.apply_two(i, j, &m);
                    }
                    CircuitOp::Rz { qubit, angle } => reg.apply_diag(qubit, &rz(angle)),
                }
            }
        })?;
        Ok(self.in_frame(run.block))
    }

    fn in_frame(&self, mut u: DMatrix<C64>) -> DMatrix<C64> {
        for r in 0..self.n_nodes {
            for c in 0..self.n_nodes {
                u[(r, c)] *= self.frame.factor(r) * self.frame.factor(c).conj();
            }
        }
        u
    }
}

/// Phase of a gate written on `(min, max)`.
fn normalized(g: &GateSpec) -> ((usize, usize), f64) {
    if g.i < g.j {
        ((g.i, g.j), g.alpha)
    } else {
        ((g.j, g.i), -g.alpha)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn fuse_z_rotations(c: &PalindromicCircuit) -> FusedCircuit {
    let n = c.n_nodes();
    let gates = c.full_sequence();

    // Pairs whose gates all carry one phase can be gauged; take them in
    // half-sequence order so the chord of a ring is its last gate.
    let mut pair_phase: Vec<((usize, usize), f64, bool)> = Vec::new();
    for g in c.half() {
        let (pair, phase) = normalized(g);
        match pair_phase.iter_mut().find(|(p, _, _)| *p == pair) {
            Some(entry) => {
                if wrap_phase(entry.1 - phase).abs() > PHASE_TOL {
                    entry.2 = false;
                }
            }
            None => pair_phase.push((pair, phase, true)),
        }
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut tree: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for &((a, b), phase, uniform) in &pair_phase {
        if !uniform {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            // lambda_b = lambda_a + phase zeroes the (a, b) gate.
            tree[a].push((b, phase));
            tree[b].push((a, -phase));
        }
    }
    let mut lambda = vec![0.0; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(p) = stack.pop() {
            for &(q, phase) in &tree[p] {
                if !seen[q] {
                    seen[q] = true;
                    lambda[q] = lambda[p] + phase;
                    stack.push(q);
                }
            }
        }
    }

    let mut ops = Vec::with_capacity(gates.len());
    for g in &gates {
        let alpha = wrap_phase(g.alpha + lambda[g.i] - lambda[g.j]);
        let sym = CircuitOp::Symmetric { i: g.i, j: g.j, theta: g.theta };
        if alpha.abs() <= PHASE_TOL {
            ops.push(sym);
        } else {
            push_rz(&mut ops, g.j, -alpha);
            ops.push(sym);
            push_rz(&mut ops, g.j, alpha);
        }
    }
    FusedCircuit {
        n_nodes: n,
        frame: GaugePhase::new(lambda),
        ops,
    }
}

/// Appends a rotation, merging it into an earlier one on the same qubit when
/// nothing in between touches that qubit.
fn push_rz(ops: &mut Vec<CircuitOp>, qubit: usize, angle: f64) {
    for k in (0..ops.len()).rev() {
        if !ops[k].touches(qubit) {
            continue;
        }
        if let CircuitOp::Rz { angle: prev, .. } = ops[k] {
            let sum = prev + angle;
            if sum.abs() <= PHASE_TOL {
                ops.remove(k);
            } else {
                ops[k] = CircuitOp::Rz { qubit, angle: sum };
            }
            return;
        }
        break;
    }
    ops.push(CircuitOp::Rz { qubit, angle });
}
