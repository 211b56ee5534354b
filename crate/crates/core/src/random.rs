//! Seeded generators for property tests and the CLI property suite.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::{build_palindrome, GateSpec, PalindromicCircuit};
use crate::graph::WalkHamiltonian;
use crate::symmetry::GaugePhase;

/// Deterministic generator for a seed and a stream label.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn phase(rng: &mut impl Rng) -> f64 {
    rng.random_range(-PI..PI)
}

fn magnitude(rng: &mut impl Rng) -> f64 {
    rng.random_range(0.5..1.5)
}

fn add(h: &mut WalkHamiltonian, i: usize, j: usize, rng: &mut impl Rng) {
    let (m, a) = (magnitude(rng), phase(rng));
    h.add_edge(i, j, m, a).expect("generated edge is valid");
}

/// Random forest on `n` nodes; each node after the first attaches to an
/// earlier one with probability 0.85. Self-energies are random on half of
/// the graphs.
pub fn forest(rng: &mut impl Rng, n: usize) -> WalkHamiltonian {
    let mut h = WalkHamiltonian::new(n).expect("n > 0");
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n {
        if rng.random_bool(0.85) {
            let p = order[rng.random_range(0..k)];
            add(&mut h, order[k], p, rng);
        }
    }
    if rng.random_bool(0.5) {
        for k in 0..n {
            h.set_self_energy(k, rng.random_range(-1.0..1.0)).expect("finite");
        }
    }
    h
}

/// Random bipartite graph with zero diagonal: a random two-colouring and each
/// cross pair joined with probability 0.5.
pub fn bipartite(rng: &mut impl Rng, n: usize) -> WalkHamiltonian {
    let mut h = WalkHamiltonian::new(n).expect("n > 0");
    let colour: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if colour[i] != colour[j] && rng.random_bool(0.5) {
                add(&mut h, i, j, rng);
            }
        }
    }
    h
}

/// Random connected-ish graph containing an odd cycle, with random phases and
/// zero diagonal.
pub fn non_bipartite(rng: &mut impl Rng, n: usize) -> WalkHamiltonian {
    assert!(n >= 3, "an odd cycle needs three nodes");
    let mut h = WalkHamiltonian::new(n).expect("n > 0");
    let len = 3 + 2 * rng.random_range(0..=(n - 3) / 2);
    let mut nodes: Vec<usize> = (0..n).collect();
    nodes.shuffle(rng);
    for k in 0..len {
        add(&mut h, nodes[k], nodes[(k + 1) % len], rng);
    }
    for &k in &nodes[len..] {
        let p = nodes[rng.random_range(0..len)];
        add(&mut h, k, p, rng);
    }
    for i in 0..n {
        for j in i + 1..n {
            if h.edge(i, j).is_none() && rng.random_bool(0.15) {
                add(&mut h, i, j, rng);
            }
        }
    }
    h
}

/// Arbitrary graph: edge probability 0.5, random self-energies.
pub fn hamiltonian(rng: &mut impl Rng, n: usize) -> WalkHamiltonian {
    let mut h = WalkHamiltonian::new(n).expect("n > 0");
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(0.5) {
                add(&mut h, i, j, rng);
            }
        }
        h.set_self_energy(i, rng.random_range(-1.0..1.0)).expect("finite");
    }
    h
}

pub fn gauge(rng: &mut impl Rng, n: usize) -> GaugePhase {
    GaugePhase::new((0..n).map(|_| phase(rng)).collect())
}

fn gate(rng: &mut impl Rng, i: usize, j: usize, chiral: bool) -> GateSpec {
    let alpha = if chiral { phase(rng) } else { 0.0 };
    GateSpec::new(i, j, alpha, rng.random_range(-PI..PI)).expect("distinct nodes")
}

/// Palindrome with one gate per edge of a random spanning tree.
pub fn tree_circuit(rng: &mut impl Rng, n: usize) -> PalindromicCircuit {
    let mut half: Vec<GateSpec> = (1..n)
        .map(|k| {
            let p = rng.random_range(0..k);
            if rng.random_bool(0.5) {
                gate(rng, k, p, true)
            } else {
                gate(rng, p, k, true)
            }
        })
        .collect();
    half.shuffle(rng);
    build_palindrome(half, n).expect("indices in range")
}

/// Palindrome whose support is bipartite (generally with even cycles); gate
/// pairs may repeat with different phases.
pub fn bipartite_circuit(rng: &mut impl Rng, n: usize, gates: usize) -> PalindromicCircuit {
    let colour: Vec<bool> = (0..n).map(|k| k % 2 == 0).collect();
    let mut half = Vec::with_capacity(gates);
    while half.len() < gates {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if colour[i] != colour[j] {
            half.push(gate(rng, i, j, true));
        }
    }
    build_palindrome(half, n).expect("indices in range")
}

/// Palindrome of `gates` random gates; `chiral = false` sets every phase to 0.
pub fn palindrome(rng: &mut impl Rng, n: usize, gates: usize, chiral: bool) -> PalindromicCircuit {
    let half = (0..gates)
        .map(|_| {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            gate(rng, i, j, chiral)
        })
        .collect();
    build_palindrome(half, n).expect("indices in range")
}
