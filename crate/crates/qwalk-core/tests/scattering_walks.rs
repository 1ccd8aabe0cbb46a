use proptest::prelude::*;
use qwalk_core::coined_walks::{coin, initial_symmetry, CoinKind, CoinedWalk};
use qwalk_core::core_math::{c, unitarity_defect, ComplexVector, QuantumState};
use qwalk_core::graphs::Graph;
use qwalk_core::scattering_walks::*;

#[test]
fn coined_and_scattering_distributions_agree() {
    let g = Graph::cycle(6).unwrap();
    for kind in [CoinKind::Hadamard, CoinKind::Balanced, CoinKind::Grover(2)] {
        let w = CoinedWalk::on_graph(&g, coin(kind).unwrap()).unwrap();
        let s = ScatteringWalk::from_coined(&w, &g).unwrap();
        let amps = initial_symmetry(0.3, 1.2).unwrap();
        let psi = w.state(2, &amps).unwrap();
        // |x⟩|c⟩ ↔ |x ⊖ c, x⟩ with x ⊖ 0 = x − 1 and x ⊖ 1 = x + 1
        let mut e = ComplexVector::zeros(s.dim());
        e[s.basis().index_of(1, 2).unwrap()] = amps[0];
        e[s.basis().index_of(3, 2).unwrap()] = amps[1];
        let phi = QuantumState::normalized(e).unwrap();
        for m in 0..25 {
            let pc = w.position_distribution(&w.run(&psi, m).unwrap()).unwrap();
            let ps = s.vertex_distribution(&s.run(&phi, m).unwrap()).unwrap();
            for (a, b) in pc.probs().iter().zip(ps.probs()) {
                assert!((a - b).abs() < 1e-12, "m={m}");
            }
        }
    }
}

#[test]
fn edge_space_matches_coined_dimension() {
    for n in [4usize, 6, 9] {
        let g = Graph::cycle(n).unwrap();
        let w = CoinedWalk::on_graph(&g, coin(CoinKind::Hadamard).unwrap()).unwrap();
        assert_eq!(EdgeBasis::new(&g).len(), w.dim());
    }
    let h = Graph::hypercube(3).unwrap();
    assert_eq!(EdgeBasis::new(&h).len(), 8 * 3);
}

#[test]
fn complete_graph_acceptance_values() {
    let out = complete_graph_search(100, 1, None).unwrap();
    assert!(out.success >= 0.95);
    let csv = trajectory_csv(&out.trajectory);
    assert_eq!(csv.lines().count(), out.steps + 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sqw_unitary_random_rules(n in 3usize..8, theta in 0.0f64..6.3, phase in 0.0f64..6.3, target in 0usize..8) {
        let g = Graph::complete(n, false).unwrap();
        let d = n - 1;
        // the Grover rule times a global phase
        let t = 2.0 / d as f64;
        let e = c(theta.cos(), theta.sin());
        let mut coins = vec![LocalCoin::ReflectTransmit { r: e * (1.0 - t), t: e * t }; n];
        coins[target % n] = LocalCoin::Reflective { phase };
        let s = ScatteringWalk::build(&g, &coins).unwrap();
        prop_assert!(unitarity_defect(&s.matrix()) < 1e-8);
    }

    #[test]
    fn reduced_evolution_preserves_norm_and_stays_in_span(n in 4usize..10, k in 1usize..3, phase in 0.0f64..6.3) {
        let walk = complete_graph_walk(n, k, phase).unwrap();
        let basis = complete_graph_basis(&walk, k).unwrap();
        prop_assert!(basis.leakage(&walk) <= 1e-9);
        let red = reduce_complete_graph(n, k, phase).unwrap();
        let mut v = red.initial.clone();
        for _ in 0..10 {
            v = &red.matrix * v;
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn star_reduced_is_unitary(n in 3usize..500, r0 in -1.0f64..0.999) {
        let (u, v0) = star_reduced(n, r0).unwrap();
        prop_assert!(unitarity_defect(&u) < 1e-12);
        prop_assert!((v0.norm() - 1.0).abs() < 1e-12);
    }
}
