//! Two-site gate circuits: palindromic assembly, node- and qubit-space
//! execution, z-rotation fusion and Trotter checks.

mod gate;
mod qubit;
mod rotations;
mod trotter;

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::GraphSkeleton;
use crate::propagator::{Propagator, Provenance};
use crate::table::{GridAxis, TransportTable};
use crate::C64;

pub use gate::{rz, rz_decompose, GateSpec, RzDecomposition};
pub use qubit::{QubitRegister, SingleExcitationRun, MAX_QUBITS};
pub use rotations::{fuse_z_rotations, CircuitOp, FusedCircuit};
pub use trotter::{trotter_circuit, trotter_error, trotter_error_at_time};

/// Support graph of a circuit: an edge wherever some gate acts.
pub type CircuitGraph = GraphSkeleton;

/// Gate list `g1..gk gk..g1`, optionally with the central pair merged.
#[derive(Debug, Clone, PartialEq)]
pub struct PalindromicCircuit {
    n_nodes: usize,
    half: Vec<GateSpec>,
    fuse_center: bool,
}

/// Mirrors `half` into a palindrome on `n_nodes` nodes.
pub fn build_palindrome(half: Vec<GateSpec>, n_nodes: usize) -> Result<PalindromicCircuit> {
    for g in &half {
        for index in [g.i, g.j] {
            if index >= n_nodes {
                return Err(Error::IndexOutOfRange { index, n_nodes });
            }
        }
    }
    Ok(PalindromicCircuit {
        n_nodes,
        half,
        fuse_center: false,
    })
}

impl PalindromicCircuit {
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn half(&self) -> &[GateSpec] {
        &self.half
    }

    pub fn fuse_center(&self) -> bool {
        self.fuse_center
    }

    /// Merges (or splits) the two central gates; the unitary is unchanged.
    pub fn with_fused_center(mut self, fuse: bool) -> Self {
        self.fuse_center = fuse;
        self
    }

    /// Gates in application order.
    pub fn full_sequence(&self) -> Vec<GateSpec> {
        let k = self.half.len();
        if k == 0 {
            return Vec::new();
        }
        if self.fuse_center {
            let center = GateSpec {
                theta: 2.0 * self.half[k - 1].theta,
                ..self.half[k - 1]
            };
            let head = &self.half[..k - 1];
            head.iter()
                .copied()
                .chain(std::iter::once(center))
                .chain(head.iter().rev().copied())
                .collect()
        } else {
            self.half.iter().copied().chain(self.half.iter().rev().copied()).collect()
        }
    }

    pub fn n_gates(&self) -> usize {
        let k = self.half.len();
        if self.fuse_center && k > 0 {
            2 * k - 1
        } else {
            2 * k
        }
    }

    pub fn support(&self) -> CircuitGraph {
        let edges = self.half.iter().map(|g| (g.i.min(g.j), g.i.max(g.j)));
        GraphSkeleton::new(self.n_nodes, edges, vec![false; self.n_nodes])
    }

    /// Circuit template evaluated at a sweep point: each gate's phase is
    /// offset by `alpha` and its angle scaled by `theta`.
    pub fn at_grid_point(&self, alpha: f64, theta: f64) -> Result<Self> {
        let half = self
            .half
            .iter()
            .map(|g| GateSpec::new(g.i, g.j, g.alpha + alpha, g.theta * theta))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { half, ..self.clone() })
    }
}

/// The six-gate palindrome `U01 U12 U20 U20 U12 U01` on three nodes, all gates
/// sharing `(alpha, theta)`. Its cycle flux is `3 alpha`.
pub fn three_cycle_circuit(alpha: f64, theta: f64) -> Result<PalindromicCircuit> {
    let half = vec![
        GateSpec::new(0, 1, alpha, theta)?,
        GateSpec::new(1, 2, alpha, theta)?,
        GateSpec::new(2, 0, alpha, theta)?,
    ];
    build_palindrome(half, 3)
}

/// Representation a circuit is executed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `N x N` single-excitation matrices.
    Node,
    /// Dense `2^N` state vectors, read back on the single-excitation basis.
    Qubit,
}

/// Left-multiplies `u` by the gate's node-space unitary.
pub(crate) fn apply_gate_rows(u: &mut DMatrix<C64>, g: &GateSpec) {
    let b = g.node_block();
    for c in 0..u.ncols() {
        let (x, y) = (u[(g.i, c)], u[(g.j, c)]);
        u[(g.i, c)] = b[(0, 0)] * x + b[(0, 1)] * y;
        u[(g.j, c)] = b[(1, 0)] * x + b[(1, 1)] * y;
    }
}

/// Node-space unitary of a gate list applied in order.
pub fn sequence_unitary(n_nodes: usize, gates: &[GateSpec]) -> DMatrix<C64> {
    let mut u = DMatrix::identity(n_nodes, n_nodes);
    for g in gates {
        apply_gate_rows(&mut u, g);
    }
    u
}

pub fn apply_circuit(c: &PalindromicCircuit, space: Space) -> Result<Propagator> {
    let gates = c.full_sequence();
    let provenance = Provenance::Circuit { n_gates: gates.len() };
    let matrix = match space {
        Space::Node => sequence_unitary(c.n_nodes, &gates),
        Space::Qubit => run_qubit_space(c.n_nodes, &gates)?.block,
    };
    Ok(Propagator::new(matrix, provenance))
}

fn run_qubit_space(n: usize, gates: &[GateSpec]) -> Result<SingleExcitationRun> {
    let mats: Vec<_> = gates.iter().map(|g| g.qubit_matrix()).collect();
    qubit::run_single_excitations(n, |reg| {
        for (g, m) in gates.iter().zip(&mats) {
            reg.apply_two(g.i, g.j, m);
        }
    })
}

/// Largest probability weight leaving the single-excitation subspace.
pub fn excitation_preservation_check(c: &PalindromicCircuit) -> Result<f64> {
    Ok(run_qubit_space(c.n_nodes, &c.full_sequence())?.max_leakage())
}

/// Evaluates `builder` at every `(alpha, theta)` (alpha outer) in node space.
pub fn circuit_sweep<F>(alphas: &[f64], thetas: &[f64], builder: F) -> Result<TransportTable>
where
    F: Fn(f64, f64) -> Result<PalindromicCircuit> + Sync,
{
    let points: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| thetas.iter().map(move |&t| (a, t)))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let unitaries = points
        .par_iter()
        .map(|&(a, t)| Ok(apply_circuit(&builder(a, t)?, Space::Node)?.into_matrix()))
        .collect::<Result<Vec<_>>>()?;
    TransportTable::from_unitaries(GridAxis::Circuit(points), &unitaries)
}

/// Half-sequence read from a circuit file.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitFile {
    pub n_nodes: Option<usize>,
    pub gates: Vec<GateSpec>,
}

impl CircuitFile {
    /// Node count: declared, else one past the largest index.
    pub fn node_count(&self) -> usize {
        self.n_nodes.unwrap_or_else(|| {
            self.gates.iter().map(|g| g.i.max(g.j) + 1).max().unwrap_or(0)
        })
    }

    pub fn into_circuit(self) -> Result<PalindromicCircuit> {
        let n = self.node_count();
        build_palindrome(self.gates, n)
    }
}

/// Parses `nodes <n>` (optional, first) and `gate <i> <j> <alpha> <theta>` lines.
pub fn parse_circuit(text: &str) -> Result<CircuitFile> {
    let mut out = CircuitFile {
        n_nodes: None,
        gates: Vec::new(),
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line, message };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "nodes" => {
                if out.n_nodes.is_some() || !out.gates.is_empty() {
                    return Err(syntax("`nodes` must appear once, before any gate".into()));
                }
                if tokens.len() != 2 {
                    return Err(syntax("expected `nodes <n>`".into()));
                }
                let n = tokens[1]
                    .parse::<usize>()
                    .map_err(|_| syntax(format!("`{}` is not a node count", tokens[1])))?;
                out.n_nodes = Some(n);
            }
            "gate" => {
                if tokens.len() != 5 {
                    return Err(syntax("expected `gate <i> <j> <alpha> <theta>`".into()));
                }
                let idx = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| syntax(format!("`{s}` is not a node index")))
                };
                let real = |s: &str| {
                    s.parse::<f64>()
                        .map_err(|_| syntax(format!("`{s}` is not a real")))
                };
                let g = GateSpec::new(idx(tokens[1])?, idx(tokens[2])?, real(tokens[3])?, real(tokens[4])?)
                    .map_err(|e| e.at_line(line))?;
                if let Some(n) = out.n_nodes {
                    for index in [g.i, g.j] {
                        if index >= n {
                            return Err(Error::IndexOutOfRange { index, n_nodes: n }.at_line(line));
                        }
                    }
                }
                out.gates.push(g);
            }
            other => return Err(syntax(format!("unknown record `{other}`"))),
        }
    }
    Ok(out)
}

/// Inverse of [`parse_circuit`] for a circuit's half-sequence.
pub fn render_circuit(c: &PalindromicCircuit) -> String {
    let mut out = format!("nodes {}\n", c.n_nodes);
    for g in &c.half {
        let _ = writeln!(out, "gate {} {} {:.16e} {:.16e}", g.i, g.j, g.alpha, g.theta);
    }
    out
}
