use std::f64::consts::PI;

use nalgebra::DMatrix;
use proptest::prelude::*;
use qwalk_core::core_math::{tvd, Distribution, C64};
use qwalk_core::ctqw::*;
use qwalk_core::graphs::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// ⟨x+d|e^{iAt}|x⟩ on cycle(N) as a plane-wave sum.
fn plane_wave_amplitude(n: usize, d: i64, t: f64) -> C64 {
    (0..n)
        .map(|k| {
            let p = 2.0 * PI * k as f64 / n as f64;
            C64::from_polar(1.0, 2.0 * t * p.cos() + p * d as f64)
        })
        .sum::<C64>()
        / n as f64
}

// Exact expectation of the randomized short-circuit evaluation.
fn expected_cost(t: &NandTree) -> f64 {
    match t {
        NandTree::Leaf(_) => 1.0,
        NandTree::Node(a, b) => {
            let (ea, eb) = (expected_cost(a), expected_cost(b));
            let (va, vb) = (a.value(), b.value());
            0.5 * (ea + if va { eb } else { 0.0 }) + 0.5 * (eb + if vb { ea } else { 0.0 })
        }
    }
}

#[test]
fn cycle_wavefront_against_plane_waves_and_bessel() {
    let (n, t) = (600, 20.0);
    let rows = cycle_bessel_profile(n, 0, t, 60).unwrap();
    for r in &rows {
        let oracle = plane_wave_amplitude(n, r.offset, t).norm_sqr();
        assert!((r.exact - oracle).abs() < 1e-10, "offset {}", r.offset);
        assert!(r.deviation <= 5e-3, "offset {}: {}", r.offset, r.deviation);
    }
    let front = cycle_bessel_check(n, 0, 40, t).unwrap();
    assert!(front.exact > 1e-3 && front.deviation <= 5e-3);
    assert!(cycle_bessel_check(100, 0, 40, t).is_err());
}

#[test]
fn cycle_limits_at_five_and_six() {
    for n in [5, 6] {
        let h = Hamiltonian::negative_adjacency(&Graph::cycle(n).unwrap()).unwrap();
        for x in 0..n {
            let pi = ctqw_limiting(&h, x).unwrap();
            let cf = cycle_limiting_closed_form(n, x).unwrap();
            for y in 0..n {
                assert!((pi.probs()[y] - cf[y]).abs() < 1e-9);
            }
        }
    }
    // N=5, y = x: 2/5 − 1/25
    let cf = cycle_limiting_closed_form(5, 2).unwrap();
    assert!((cf[2] - (2.0 / 5.0 - 1.0 / 25.0)).abs() < 1e-15);
}

#[test]
fn time_average_mixes_on_cycle_nine() {
    let n = 9;
    let h = Hamiltonian::negative_adjacency(&Graph::cycle(n).unwrap()).unwrap();
    let big_t = 20.0 * n as f64 * (n as f64).ln();
    let avg = ctqw_time_average(&h, 0, big_t).unwrap();
    let pi = ctqw_limiting(&h, 0).unwrap();
    assert!(tvd(&avg.distribution, &pi).unwrap() <= 0.05);

    // exact average: Σ_{k,m} a_k a_m sin(ωT)/(ωT), ω = E_k − E_m, a_k = φ_k(y)φ_k(x)
    let p = CtqwPropagator::new(&h);
    let (e, v) = (p.energies(), p.vectors());
    let exact: Vec<f64> = (0..n)
        .map(|y| {
            let mut s = 0.0;
            for k in 0..n {
                for m in 0..n {
                    let w = (e[k] - e[m]) * big_t;
                    let avg_cos = if w.abs() < 1e-12 { 1.0 } else { w.sin() / w };
                    s += v[(y, k)] * v[(0, k)] * v[(y, m)] * v[(0, m)] * avg_cos;
                }
            }
            s
        })
        .collect();
    for (a, b) in avg.distribution.probs().iter().zip(&exact) {
        assert!((a - b).abs() < 1e-8);
    }
    assert!(avg.richardson_error < 1e-8);
}

#[test]
fn hypercube_full_evolution_up_to_ten() {
    let times = [0.0, 0.4, 1.0, PI / 2.0, 2.3];
    for n in 1..=10 {
        let full = hypercube_antipode_full(n, &times).unwrap();
        for (&t, f) in times.iter().zip(&full) {
            assert!((f - hypercube_antipode_prob(n, t).unwrap()).abs() < 1e-10, "n={n} t={t}");
        }
    }
    assert!((hypercube_antipode_full(6, &[1.0]).unwrap()[0] - 1.0f64.sin().powi(12)).abs() < 1e-10);
}

#[test]
fn glued_trees_reduce_exactly() {
    for kind in [GluedKind::Plain, GluedKind::Cycle] {
        for n in 2..=6 {
            let r = glued_trees_reduce(kind, n, 11 + n as u64).unwrap();
            let rep = r.report.as_ref().unwrap();
            assert!(rep.max_deviation <= 1e-8 && rep.max_leakage <= 1e-8, "{kind:?} n={n}");
            assert!(*rep.times.last().unwrap() >= 4.0 * n as f64 - 1e-9);

            // B^T A B with normalized column indicators is the line's adjacency
            let g = glued_graph(kind, n, 11 + n as u64).unwrap();
            let cols = g.column_sets().unwrap();
            let b = DMatrix::from_fn(g.n(), cols.len(), |v, k| {
                if cols[k].contains(&v) {
                    1.0 / (cols[k].len() as f64).sqrt()
                } else {
                    0.0
                }
            });
            let reduced = b.transpose() * g.adjacency_real() * &b;
            let line = Hamiltonian::weighted_line(&r.line).unwrap();
            assert!((reduced + line.matrix()).abs().max() < 1e-12);
        }
    }
}

#[test]
fn glued_trees_traverse_at_n6() {
    for kind in [GluedKind::Plain, GluedKind::Cycle] {
        let tr = glued_traversal(kind, 6, 24.0, 0.01).unwrap();
        assert!(tr.probability >= 0.25, "{kind:?}: {tr:?}");
    }
}

#[test]
fn analog_search_closed_form() {
    let r = analog_search(64, &[9], &[0.0, 4.0 * PI]).unwrap();
    assert!((r[0].simulated - 1.0 / 64.0).abs() < 1e-12);
    assert!((r[1].simulated - 1.0).abs() < 1e-9);

    let times: Vec<f64> = (0..=200).map(|i| i as f64 * 0.1).collect();
    let dev = analog_search(128, &[17], &times)
        .unwrap()
        .iter()
        .map(|p| (p.simulated - p.closed_form).abs())
        .fold(0.0, f64::max);
    assert!(dev <= 1e-9);

    let m = [3, 100, 200, 255];
    let t = analog_optimal_time(256, m.len());
    let r = analog_search(256, &m, &[t]).unwrap()[0];
    assert!((r.simulated - 1.0).abs() < 1e-9 && r.leakage < 1e-10);
}

#[test]
fn nand_depth_two_exhaustive() {
    for bits in 0u32..16 {
        let leaves: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
        let e = nand_eval(&NandTree::balanced(2, &leaves).unwrap());
        assert_eq!(e.ratio_bit, e.boolean_bit, "leaves {leaves:?}");
    }
    let g = nand_eval(&nand_game_instance());
    assert!(!g.boolean_bit && !g.ratio_bit);
}

#[test]
fn classical_nand_cost_at_depth_eight() {
    let n = 256f64;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for root in [false, true] {
        let tree = NandTree::hard_instance(8, root, &mut rng).unwrap();
        let exact = expected_cost(&tree);
        assert!(exact >= n.powf(0.7) && exact <= n.powf(0.8), "exact {exact}");
        let mean = classical_nand_cost(&tree, &mut rng, 1000).unwrap();
        assert!(mean >= n.powf(0.7) && mean <= n.powf(0.8), "mean {mean}");
        assert!((mean - exact).abs() < 0.1 * exact);
    }
    let zeros = NandTree::balanced(8, &[false; 256]).unwrap();
    assert!(classical_nand_cost(&zeros, &mut rng, 100).unwrap() <= n);
}

#[test]
fn limiting_distribution_is_a_distribution() {
    let g = Graph::hypercube(3).unwrap();
    let pi: Distribution = ctqw_limiting(&Hamiltonian::laplacian(&g).unwrap(), 5).unwrap();
    assert!((pi.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

fn arb_tree(depth: u32) -> BoxedStrategy<NandTree> {
    let leaf = any::<bool>().prop_map(NandTree::Leaf);
    leaf.prop_recursive(depth, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| NandTree::node(a, b))
    })
    .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn time_reversal_symmetry(n in 3usize..9, x in 0usize..9, y in 0usize..9, t in 0.0f64..20.0, lap in any::<bool>()) {
        let (x, y) = (x % n, y % n);
        let g = Graph::cycle(n).unwrap();
        let h = if lap { Hamiltonian::laplacian(&g).unwrap() } else { Hamiltonian::negative_adjacency(&g).unwrap() };
        let p = CtqwPropagator::new(&h);
        prop_assert!((p.column(t, x)[y].norm() - p.column(t, y)[x].norm()).abs() < 1e-10);
    }

    #[test]
    fn nand_ratio_matches_boolean(tree in arb_tree(5)) {
        let e = nand_eval(&tree);
        prop_assert_eq!(e.ratio_bit, e.boolean_bit);
        // a large positive child always yields a small negative parent
        if let NandTree::Node(a, b) = &tree {
            let (ra, rb) = (nand_eval(a).root_ratio, nand_eval(b).root_ratio);
            if ra >= NAND_THRESHOLD || rb >= NAND_THRESHOLD {
                prop_assert!(e.root_ratio < 0.0 && e.root_ratio.abs() < NAND_THRESHOLD);
            }
        }
    }

    #[test]
    fn random_depth_five_trees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = NandTree::random_balanced(5, &mut rng).unwrap();
        let e = nand_eval(&tree);
        prop_assert_eq!(e.ratio_bit, e.boolean_bit);
    }

    #[test]
    fn analog_search_stays_in_the_plane(n in 2usize..40, m in 1usize..5, t in 0.0f64..30.0) {
        prop_assume!(m < n);
        let marked: Vec<usize> = (0..m).map(|i| i * (n / m)).collect();
        let p = analog_search(n, &marked, &[t]).unwrap()[0];
        prop_assert!(p.leakage <= 1e-10);
        prop_assert!((p.simulated - p.closed_form).abs() <= 1e-9);
    }
}
