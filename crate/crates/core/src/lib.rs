//! Chiral continuous-time quantum walks on complex-weighted graphs.
//!
//! A [`WalkHamiltonian`] holds a Hermitian graph Hamiltonian with edge
//! couplings `h e^{i alpha}`. [`classify`] decides from the support graph
//! whether transition probabilities are time-symmetric for every choice of
//! phases, [`propagate`] evaluates `e^{-iHt}`, and the [`circuit`] module
//! builds the palindromic two-site-gate circuits that simulate such walks.

pub mod circuit;
pub mod config;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod properties;
pub mod propagator;
pub mod random;
pub mod symmetry;
pub mod table;

/// Complex double used throughout.
pub type C64 = nalgebra::Complex<f64>;

pub use circuit::{
    apply_circuit, build_palindrome, circuit_sweep, excitation_preservation_check,
    fuse_z_rotations, parse_circuit, rz_decompose, three_cycle_circuit, trotter_error,
    CircuitGraph, GateSpec, PalindromicCircuit, Space,
};
pub use config::NumericConfig;
pub use error::{Error, Result};
pub use graph::{parse_graph, Edge, GraphSkeleton, WalkHamiltonian};
pub use propagator::{
    max_transfer, propagate, sweep_time, transition_probability, Evolver, Propagator, TransferPeak,
};
pub use symmetry::{
    apply_gauge, bipartite_negation_gauge, classify, cycle_flux, is_bipartite, pts_numeric,
    tree_phase_removal, Bipartiteness, GaugePhase, PtsVerdict, StructuralClass, SymmetryReport,
};
pub use table::{validate_transport_csv, GridAxis, TransportTable};
