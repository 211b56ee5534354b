use std::f64::consts::PI;

use proptest::prelude::*;

use chiralwalk::circuit::{apply_circuit, fuse_z_rotations, rz_decompose, sequence_unitary, Space};
use chiralwalk::linalg::max_abs_diff;
use chiralwalk::symmetry::{apply_gauge, tree_phase_removal, wrap_phase};
use chiralwalk::{
    build_palindrome, classify, parse_graph, propagate, random, GateSpec, GaugePhase,
    StructuralClass, WalkHamiltonian,
};

fn phase() -> impl Strategy<Value = f64> {
    -PI..PI
}

/// Edges as `(i, j, h, alpha)` on `n` nodes.
fn hamiltonian(max_n: usize) -> impl Strategy<Value = WalkHamiltonian> {
    (1..=max_n).prop_flat_map(|n| {
        let edge = (0..n, 0..n, 0.2..2.0f64, phase());
        (
            Just(n),
            prop::collection::vec(edge, 0..2 * n),
            prop::collection::vec(-1.0..1.0f64, n),
        )
            .prop_map(|(n, edges, diag)| {
                let mut h = WalkHamiltonian::new(n).unwrap();
                for (i, j, m, a) in edges {
                    if i != j && h.edge(i, j).is_none() {
                        h.add_edge(i, j, m, a).unwrap();
                    }
                }
                for (k, e) in diag.into_iter().enumerate() {
                    h.set_self_energy(k, e).unwrap();
                }
                h
            })
    })
}

fn gate(n: usize) -> impl Strategy<Value = GateSpec> {
    (0..n, 1..n, phase(), phase()).prop_map(move |(i, d, a, t)| GateSpec::new(i, (i + d) % n, a, t).unwrap())
}

fn probs(h: &WalkHamiltonian, t: f64) -> nalgebra::DMatrix<f64> {
    propagate(h, t).matrix().map(|z| z.norm_sqr())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gauge_preserves_probabilities(h in hamiltonian(7), seed in any::<u64>(), t in -8.0..8.0f64) {
        let g = random::gauge(&mut random::rng(seed, 0), h.n_nodes());
        let h2 = apply_gauge(&h, &g).unwrap();
        prop_assert!((probs(&h, t) - probs(&h2, t)).amax() <= 1e-12);
    }

    #[test]
    fn propagators_are_unitary(h in hamiltonian(9), t in -20.0..20.0f64) {
        prop_assert!(propagate(&h, t).unitarity_defect() <= 1e-10);
    }

    #[test]
    fn render_parse_round_trip(h in hamiltonian(6)) {
        let back = parse_graph(&h.render()).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn forest_gauge_makes_phases_vanish(seed in any::<u64>(), n in 1usize..12) {
        let h = random::forest(&mut random::rng(seed, 1), n);
        let g = tree_phase_removal(&h).unwrap();
        let real = apply_gauge(&h, &g).unwrap();
        for e in real.edges() {
            prop_assert!(wrap_phase(e.alpha).abs() <= 1e-12);
        }
        let class = classify(&h).structural_class;
        prop_assert!(matches!(class, StructuralClass::Tree | StructuralClass::TreeWithSelfEdges));
    }

    #[test]
    fn gauge_composition(h in hamiltonian(5), s1 in any::<u64>(), s2 in any::<u64>()) {
        let n = h.n_nodes();
        let (a, b) = (random::gauge(&mut random::rng(s1, 2), n), random::gauge(&mut random::rng(s2, 2), n));
        let stepwise = apply_gauge(&apply_gauge(&h, &a).unwrap(), &b).unwrap();
        let once = apply_gauge(&h, &a.compose(&b)).unwrap();
        prop_assert!(max_abs_diff(&stepwise.to_dense(), &once.to_dense()) <= 1e-12);
        let zero = apply_gauge(&h, &GaugePhase::zeros(n)).unwrap();
        prop_assert_eq!(zero, h);
    }

    #[test]
    fn z_rotation_identity(alpha in phase(), theta in phase()) {
        let g = GateSpec::new(0, 1, alpha, theta).unwrap();
        let d = rz_decompose(&g).compose() - g.qubit_matrix();
        prop_assert!(d.iter().all(|z| z.norm() <= 1e-12));
    }

    #[test]
    fn symmetric_palindromes_are_amplitude_symmetric(half in prop::collection::vec(gate(5), 0..8)) {
        let half: Vec<_> = half.into_iter().map(|g| g.symmetric()).collect();
        let c = build_palindrome(half, 5).unwrap();
        let u = apply_circuit(&c, Space::Node).unwrap().into_matrix();
        prop_assert!(max_abs_diff(&u, &u.transpose()) <= 1e-12);
    }

    #[test]
    fn palindromes_match_in_both_spaces(half in prop::collection::vec(gate(4), 0..6)) {
        let c = build_palindrome(half, 4).unwrap();
        let un = apply_circuit(&c, Space::Node).unwrap();
        let uq = apply_circuit(&c, Space::Qubit).unwrap();
        prop_assert!(max_abs_diff(un.matrix(), uq.matrix()) <= 1e-10);
        let full = c.full_sequence();
        let rev: Vec<_> = full.iter().rev().copied().collect();
        prop_assert_eq!(&full, &rev);
        prop_assert!(max_abs_diff(un.matrix(), &sequence_unitary(4, &full)) == 0.0);
    }

    #[test]
    fn fusion_reproduces_any_palindrome(half in prop::collection::vec(gate(5), 0..8), fuse in any::<bool>()) {
        let c = build_palindrome(half, 5).unwrap().with_fused_center(fuse);
        let f = fuse_z_rotations(&c);
        let u = apply_circuit(&c, Space::Node).unwrap();
        prop_assert!(max_abs_diff(&f.node_unitary(), u.matrix()) <= 1e-11);
    }
}
