//! One check per acceptance criterion. Run with `-- --nocapture --test-threads=1` to see the
//! PASS/FAIL lines in order.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI, PI};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};
use qwalk_core::classical_walks::*;
use qwalk_core::coined_walks::*;
use qwalk_core::core_math::{c, cr, tvd, unitarity_defect, Distribution, QuantumState};
use qwalk_core::ctqw::*;
use qwalk_core::graphs::Graph;
use qwalk_core::grover_search::*;
use qwalk_core::scattering_walks::*;
use qwalk_core::subset_search::*;
use qwalk_core::szegedy::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, what: &str, ok: bool, detail: String) -> bool {
    println!("criterion {id:>2} {}: {what} [{detail}]", if ok { "PASS" } else { "FAIL" });
    ok
}

fn hadamard_line_dist(m: usize, amps: [qwalk_core::core_math::C64; 2]) -> Distribution {
    let w = CoinedWalk::line(coin(CoinKind::Hadamard).unwrap(), m).unwrap();
    let psi = w.state_at_label(0, &amps).unwrap();
    w.position_distribution(&w.run(&psi, m).unwrap()).unwrap()
}

fn classical_line_dist(m: usize) -> Distribution {
    let ch = line_chain(m).unwrap();
    ch.evolve(&ch.delta(line_index(m, 0)).unwrap(), m).unwrap()
}

// P(x = 2j − m) = C(m, j)/2^m built by Pascal's rule
fn binomial_row(m: usize) -> Vec<(i64, f64)> {
    let mut row = vec![1.0f64];
    for _ in 0..m {
        let mut next = vec![0.0; row.len() + 1];
        for (j, v) in row.iter().enumerate() {
            next[j] += v / 2.0;
            next[j + 1] += v / 2.0;
        }
        row = next;
    }
    row.into_iter().enumerate().map(|(j, p)| (2 * j as i64 - m as i64, p)).collect()
}

#[test]
fn criterion_01_hadamard_three_steps() {
    let p = hadamard_line_dist(3, [cr(1.0), cr(0.0)]);
    let expect = [(-3, 0.125), (-1, 0.125), (1, 0.625), (3, 0.125)];
    let dev = expect.iter().map(|&(x, q)| (p.get(x) - q).abs()).fold(0.0, f64::max);
    let rest: f64 = [-2, 0, 2].iter().map(|&x| p.get(x)).sum();
    let ok = dev <= 1e-12 && rest <= 1e-12;
    assert!(verdict(1, "Hadamard 3-step distribution", ok, format!("max deviation {dev:.2e}")));
}

#[test]
fn criterion_02_absorbing_boundary() {
    let q = absorbing_line_quantum(4000).unwrap().total();
    let dq = (q - FRAC_2_PI).abs();
    let ok_q = dq <= 1e-3;
    verdict(2, "quantum absorption at m=4000 equals 2/π", ok_q, format!("{q:.6} vs {FRAC_2_PI:.6}"));
    // the unbiased classical walk is absorbed with probability 1 − O(m^{-1/2}): ≈ 0.987 at m = 4000
    let cl = line_absorption_cumulative(4000).unwrap();
    verdict(
        2,
        "classical absorption at m=4000 within 1e-3 of 1 (unattainable, see ignored test)",
        (1.0 - cl).abs() <= 1e-3,
        format!("{cl:.6}"),
    );
    assert!((1.0 - cl) > 0.0 && cl > 0.98 && cl > q);
    assert!(ok_q);
}

#[test]
#[ignore = "the classical absorption probability at m = 4000 is about 0.987, not within 1e-3 of 1"]
fn criterion_02_classical_within_1e3_at_4000() {
    let cl = line_absorption_cumulative(4000).unwrap();
    assert!((1.0 - cl).abs() <= 1e-3, "{cl}");
}

#[test]
fn criterion_03_dispersion() {
    let m = 200;
    let p = hadamard_line_dist(m, [cr(1.0), cr(0.0)]);
    let x2: f64 = p.labels().iter().zip(p.probs()).map(|(&x, &q)| (x * x) as f64 * q).sum();
    let target = (2f64.sqrt() - 1.0) / 2f64.sqrt();
    let r = x2 / (m * m) as f64;
    let ok_q = (r - target).abs() <= 0.02 * target;
    let mut ok_c = true;
    let mut detail = format!("⟨x²⟩/m² = {r:.5} vs {target:.5}");
    for m in [100usize, 400] {
        let s = classical_line_dist(m).stats();
        let v = s.variance / m as f64;
        ok_c &= (v - 1.0).abs() <= 0.01;
        detail.push_str(&format!("; classical var/m at {m} = {v:.6}"));
    }
    assert!(verdict(3, "ballistic vs diffusive spreading", ok_q && ok_c, detail));
}

#[test]
fn criterion_04_symmetric_start() {
    let p = hadamard_line_dist(100, [cr(FRAC_1_SQRT_2), c(0.0, FRAC_1_SQRT_2)]);
    let dev = (0..=100).map(|x| (p.get(x) - p.get(-x)).abs()).fold(0.0, f64::max);
    assert!(verdict(4, "p(x) = p(−x) for (|↑⟩+i|↓⟩)/√2", dev <= 1e-12, format!("max asymmetry {dev:.2e}")));
}

#[test]
fn criterion_05_full_decoherence_is_classical() {
    let m = 100;
    let w = CoinedWalk::line(coin(CoinKind::Hadamard).unwrap(), m).unwrap();
    let psi = w.state_at_label(0, &[cr(1.0), cr(0.0)]).unwrap();
    let series = decohere_series(&w, 0.0, Measurement::Both, &DensityState::pure(&psi), m).unwrap();
    let mut worst: f64 = 0.0;
    for (t, d) in series.iter().enumerate() {
        let (labels, probs): (Vec<i64>, Vec<f64>) = binomial_row(t).into_iter().unzip();
        let b = Distribution::new(labels, probs).unwrap();
        let full = Distribution::new(
            w.labels().to_vec(),
            w.labels().iter().map(|&x| b.get(x)).collect(),
        )
        .unwrap();
        worst = worst.max(tvd(d, &full).unwrap());
    }
    assert!(verdict(5, "p=0 position+coin measurement gives the binomial", worst <= 1e-10, format!("max tvd {worst:.2e}")));
}

#[test]
fn criterion_06_entropy_ordering() {
    let m = 100;
    let sc = classical_line_dist(m).entropy();
    let sh = hadamard_line_dist(m, [cr(1.0), cr(0.0)]).entropy();
    let bound = ((m + 1) as f64).ln();
    let approx = (1.0 + (PI * m as f64 / 2.0).ln()) / 2.0;
    let ok = sc < sh && sh <= bound && (sc - approx).abs() <= 0.02 * approx;
    assert!(verdict(6, "S_classical < S_Hadamard ≤ ln(m+1)", ok, format!("{sc:.4} < {sh:.4} ≤ {bound:.4}; approx {approx:.4}")));
}

#[test]
fn criterion_07_grover() {
    let small = grover_run(4, &[2], Steps::Auto).unwrap();
    let big = grover_run(1024, &[700], Steps::Fixed(25)).unwrap();
    let ok = small.queries == 1 && (small.success - 1.0).abs() <= 1e-12 && big.success >= 0.999;
    assert!(verdict(
        7,
        "Grover N=4 in one query, N=1024 at 25 iterations",
        ok,
        format!("N=4: {} queries, success {:.15}; N=1024: {:.6}", small.queries, small.success, big.success)
    ));
}

#[test]
fn criterion_08_fixed_point() {
    let mut worst: f64 = 0.0;
    let mut ledger_ok = true;
    for base in [FixedPointBase::GroverIterate, FixedPointBase::Identity] {
        for (n, marked) in [(64usize, vec![3usize]), (50, vec![1, 2, 3, 4, 5, 6]), (20, vec![0, 9])] {
            let s = fixed_point_series(6, n, &marked, base).unwrap();
            for w in s.windows(2) {
                worst = worst.max((w[1].failure - w[0].failure.powi(3)).abs());
            }
            for l in &s {
                let p = 3u64.pow(l.level);
                ledger_ok &= l.queries == p * base.cost() + (p - 1) / 2;
            }
        }
    }
    let ok = worst <= 1e-9 && ledger_ok;
    assert!(verdict(8, "failure cubes per level, ledger 3^k n + (3^k−1)/2", ok, format!("max cube deviation {worst:.2e}")));
}

#[test]
fn criterion_09_complete_graph_reduction() {
    let mut worst: f64 = 0.0;
    for n in 3usize..=12 {
        for k in 1..(n - 1).min(4) {
            let walk = complete_graph_walk(n, k, PI).unwrap();
            let basis = complete_graph_basis(&walk, k).unwrap();
            let red = reduce_complete_graph(n, k, PI).unwrap();
            let mut full = walk.uniform_state().into_vector();
            let mut cv = red.initial.clone();
            for _ in 0..30 {
                worst = worst.max((basis.project(&full) - &cv).norm());
                full = walk.step_vec(&full);
                cv = &red.matrix * cv;
            }
        }
    }
    let out = complete_graph_search(100, 1, None).unwrap();
    let steps = (PI / (2.0 * 2f64.sqrt()) * 10.0).round() as usize;
    let ok = worst <= 1e-10 && out.steps == steps && out.success >= 0.95;
    assert!(verdict(
        9,
        "reduced evolution equals edge space; N=100 search",
        ok,
        format!("max deviation {worst:.2e}; success {:.4} at m̃={}", out.success, out.steps)
    ));
}

#[test]
fn criterion_10_star_graph() {
    let out = star_graph_search(400, 0.0).unwrap();
    let at = out.trajectory[out.opt_steps];
    let parts = [at[0], at[1], at[4]];
    let total: f64 = parts.iter().sum();
    let ok = total >= 0.95 && parts.iter().all(|p| (p / total - 1.0 / 3.0).abs() <= 0.05);
    assert!(verdict(
        10,
        "star N=400 triangle mass",
        ok,
        format!("total {total:.4}, shares {:.4} {:.4} {:.4}", parts[0] / total, parts[1] / total, parts[2] / total)
    ));
    assert!((out.triangle - total).abs() < 1e-12);
}

#[test]
fn criterion_11_szegedy_spectral_theorem() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut pair, mut rest): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let p = random_symmetric_chain(n, 0.6, &mut rng);
        let m = spectrum_map(&p).unwrap();
        pair = pair.max(m.max_pair_error);
        rest = rest.max(m.residual_error);
    }
    let ok = pair <= 1e-8 && rest <= 1e-8;
    assert!(verdict(11, "eigenphases ±2 arccos λ, remaining ±1", ok, format!("pair {pair:.2e}, residual {rest:.2e}")));
}

#[test]
fn criterion_12_marked_bounds() {
    let mut ok = true;
    let mut slack = f64::INFINITY;
    for n in [8usize, 16, 32] {
        let p = complete_graph_chain(n).unwrap();
        for k in [1usize, 2, 4] {
            let marked: Vec<usize> = (0..k).collect();
            let m = marked_modify(&p, &marked).unwrap();
            let g = marked_phase_gap(&p, &marked).unwrap();
            ok &= m.bound_holds() && g.bound_holds();
            slack = slack.min(m.bound - m.norm).min(g.phi0 - g.bound);
        }
    }
    assert!(verdict(12, "‖P_M‖ ≤ 1 − δε and φ₀ ≥ 2√(δε)", ok, format!("smallest slack {slack:.3e}")));
}

#[test]
fn criterion_13_cycle_bessel() {
    let rows = cycle_bessel_profile(600, 0, 20.0, 60).unwrap();
    let worst = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    assert!(verdict(13, "cycle(600), t=20 against |J_d(2t)|²", worst <= 5e-3, format!("max deviation {worst:.2e}")));
}

#[test]
fn criterion_14_cycle_limits() {
    let mut worst: f64 = 0.0;
    for n in [5usize, 6] {
        let h = Hamiltonian::negative_adjacency(&Graph::cycle(n).unwrap()).unwrap();
        for x in 0..n {
            let pi = ctqw_limiting(&h, x).unwrap();
            let cf = cycle_limiting_closed_form(n, x).unwrap();
            for y in 0..n {
                worst = worst.max((pi.probs()[y] - cf[y]).abs());
            }
        }
    }
    assert!(verdict(14, "cycle(5), cycle(6) limiting distributions", worst <= 1e-9, format!("max deviation {worst:.2e}")));
}

#[test]
fn criterion_15_hypercube() {
    let times = [0.0, 0.3, 1.0, 1.7, PI / 2.0, 2.9];
    let mut worst: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for n in 1..=10 {
        let full = hypercube_antipode_full(n, &times).unwrap();
        for (&t, f) in times.iter().zip(&full) {
            worst = worst.max((f - hypercube_antipode_prob(n, t).unwrap()).abs());
        }
        peak = peak.max((full[4] - 1.0).abs());
    }
    let ok = worst <= 1e-10 && peak <= 1e-10;
    assert!(verdict(15, "antipode probability (sin²t)ⁿ", ok, format!("max deviation {worst:.2e}; |p(π/2) − 1| {peak:.2e}")));
}

#[test]
fn criterion_16_glued_trees() {
    let mut worst: f64 = 0.0;
    for kind in [GluedKind::Plain, GluedKind::Cycle] {
        for n in 2..=6 {
            let rep = glued_trees_reduce(kind, n, 16 + n as u64).unwrap().report.unwrap();
            worst = worst.max(rep.max_deviation).max(rep.max_leakage);
        }
    }
    let tr = glued_traversal(GluedKind::Cycle, 6, 24.0, 0.01).unwrap();
    let ok = worst <= 1e-8 && tr.probability >= 0.25;
    assert!(verdict(
        16,
        "column projection equals the weighted line; EXIT reached",
        ok,
        format!("max deviation {worst:.2e}; EXIT probability {:.4} at t={:.2}", tr.probability, tr.time)
    ));
}

fn analog_grid() -> Vec<(usize, Vec<usize>)> {
    vec![(16, vec![3]), (64, vec![9]), (128, vec![17]), (100, vec![1, 50, 99]), (256, vec![3, 100, 200, 255])]
}

#[test]
fn criterion_17_analog_search() {
    let (mut exact_dev, mut literal_dev, mut peak, mut leak): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for (n, marked) in analog_grid() {
        let m = marked.len();
        let big_t = analog_optimal_time(n, m);
        let times: Vec<f64> = (0..=100).map(|i| big_t * i as f64 / 50.0).collect();
        for p in analog_search(n, &marked, &times).unwrap() {
            exact_dev = exact_dev.max((p.simulated - p.closed_form).abs());
            let literal = (p.t * (m as f64 / n as f64).sqrt()).sin().powi(2);
            literal_dev = literal_dev.max((p.simulated - literal).abs());
            leak = leak.max(p.leakage);
        }
        peak = peak.max((analog_search(n, &marked, &[big_t]).unwrap()[0].simulated - 1.0).abs());
    }
    let ok = exact_dev <= 1e-9 && peak <= 1e-9 && leak <= 1e-10;
    verdict(
        17,
        "analog search: sin²(δt) + (M/N)cos²(δt) vs dense evolution, 1 at T",
        ok,
        format!("max deviation {exact_dev:.2e}; |p(T) − 1| {peak:.2e}; leakage {leak:.2e}"),
    );
    verdict(
        17,
        "analog search: literal sin²(δt) vs dense evolution (unattainable at t ≠ T, see ignored test)",
        literal_dev <= 1e-9,
        format!("max deviation {literal_dev:.3e}, equal to M/N at t = 0"),
    );
    assert!(ok);
}

#[test]
#[ignore = "from the uniform start the marked probability is M/N at t = 0, so bare sin²(δt) deviates by up to M/N"]
fn criterion_17_literal_sin_squared() {
    for (n, marked) in analog_grid() {
        let d = (marked.len() as f64 / n as f64).sqrt();
        let times: Vec<f64> = (0..=20).map(|i| i as f64 * 0.5).collect();
        for p in analog_search(n, &marked, &times).unwrap() {
            assert!((p.simulated - (d * p.t).sin().powi(2)).abs() <= 1e-9, "N={n} t={}", p.t);
        }
    }
}

#[test]
fn criterion_18_nand() {
    let mut mismatches = 0;
    for bits in 0u32..16 {
        let leaves: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
        let e = nand_eval(&NandTree::balanced(2, &leaves).unwrap());
        mismatches += usize::from(e.ratio_bit != e.boolean_bit);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..1000 {
        let e = nand_eval(&NandTree::random_balanced(5, &mut rng).unwrap());
        mismatches += usize::from(e.ratio_bit != e.boolean_bit);
    }
    assert!(verdict(18, "ratio recursion equals boolean NAND on 16 + 1000 trees", mismatches == 0, format!("{mismatches} mismatches")));
}

#[test]
fn criterion_19_subset_finding() {
    // singleton sets against an independent scattering-walk simulation of the same operator sequence
    let mut worst: f64 = 0.0;
    for n in [6usize, 9, 12] {
        let g = Graph::complete(n, false).unwrap();
        let t = 2.0 / (n - 1) as f64;
        let w = n / 2;
        let mut coins = vec![LocalCoin::Grover; n];
        coins[w] = LocalCoin::ReflectTransmit { r: cr(t - 1.0), t: cr(-t) };
        let flipped = ScatteringWalk::build(&g, &coins).unwrap();
        let plain = ScatteringWalk::uniform(&g, LocalCoin::Grover).unwrap();
        let p = SubsetProblem::marked(n, &[w]).unwrap();
        let (tau1, _) = collision_schedule(n, 1, 1);
        let (curve, _) = subset_success_curve(&p, 1, tau1, 15).unwrap();
        let mut psi = plain.uniform_state();
        for &expected in &curve {
            worst = worst.max((plain.vertex_distribution(&psi).unwrap().probs()[w] - expected).abs());
            psi = plain.run(&flipped.run(&psi, 1).unwrap(), tau1 - 1).unwrap();
        }
    }
    let p = SubsetProblem::collision(10, 3, 7).unwrap();
    let r = subset_walk_run(&p, 5, Schedule::Auto).unwrap();
    let best = r.window_optimum.unwrap();
    let ok = worst <= 1e-9 && best.success >= 0.5 && best.tau1.abs_diff(r.tau1) <= 2 && best.tau2.abs_diff(r.tau2) <= 2;
    assert!(verdict(
        19,
        "k=1 curve reproduced; N=10 collision within ±2 of the schedule",
        ok,
        format!(
            "curve deviation {worst:.2e}; schedule ({}, {}) success {:.4}; best ({}, {}) success {:.4}",
            r.tau1, r.tau2, r.success, best.tau1, best.tau2, best.success
        )
    ));
}

#[test]
fn criterion_20_telescoping() {
    let m = TableModel::new(vec![0.0, 0.5, 1.0, 2.0]).unwrap();
    let opts = TelescopeOptions { samples_per_level: 10_000, burn_in: 100, thin: 1 };
    let schedule = linear_schedule(1.0, 8);
    let r = telescoping_partition_estimate(&m, &schedule, opts, 20).unwrap();
    let z = partition_function(&m, 1.0).unwrap();
    let rel = (r.z_hat / z - 1.0).abs();
    let mut identity: f64 = 0.0;
    for model in [m.clone(), TableModel::new(vec![-1.0, 0.0, 0.3, 3.0, 0.3]).unwrap()] {
        for w in schedule.windows(2) {
            let e = exact_expectation_y(&model, w[0], w[1]).unwrap();
            let ratio = partition_function(&model, w[1]).unwrap() / partition_function(&model, w[0]).unwrap();
            identity = identity.max((e / ratio - 1.0).abs());
        }
    }
    let ok = rel <= 0.05 && identity <= 1e-14;
    assert!(verdict(
        20,
        "telescoping Ẑ within 5%; E[Yᵢ] = Z(βᵢ₊₁)/Z(βᵢ)",
        ok,
        format!("Ẑ = {:.5}, Z = {z:.5}, relative error {rel:.4}; identity defect {identity:.1e}", r.z_hat)
    ));
}

fn record<T: std::fmt::Debug>(failures: &mut Vec<String>, name: &str, r: Result<(), TestError<T>>) {
    if let Err(e) = r {
        failures.push(format!("{name}: {e}"));
    }
}

#[test]
fn criterion_21_property_suites() {
    let config = Config { cases: 128, failure_persistence: None, ..Config::default() };
    let mut failures = Vec::new();
    let mut runner = TestRunner::new(config.clone());
    record(
        &mut failures,
        "coined walk unitary and norm-preserving",
        runner.run(&(3usize..12, 0usize..30, 0.0f64..1.0), |(n, m, q)| {
            let g = Graph::cycle(n).unwrap();
            let w = CoinedWalk::on_graph(&g, coin(CoinKind::Hadamard).unwrap()).unwrap();
            prop_assert!(unitarity_defect(&w.matrix()) <= 1e-10);
            let psi = w.state(0, &initial_symmetry(q, 0.4).unwrap()).unwrap();
            let s: f64 = w.position_distribution(&w.run(&psi, m).unwrap()).unwrap().probs().iter().sum();
            prop_assert!((s - 1.0).abs() <= 1e-10);
            Ok(())
        }),
    );
    let mut runner = TestRunner::new(config.clone());
    record(
        &mut failures,
        "decoherence keeps unit trace",
        runner.run(&(0.0f64..1.0, 0usize..3), |(p, kind)| {
            let w = CoinedWalk::line(coin(CoinKind::Hadamard).unwrap(), 6).unwrap();
            let psi = w.state_at_label(0, &[cr(0.6), c(0.0, 0.8)]).unwrap();
            let meas = [Measurement::Coin, Measurement::Position, Measurement::Both][kind];
            let r = decohere_evolve(&w, p, meas, &DensityState::pure(&psi), 6).unwrap();
            prop_assert!((r.trace() - 1.0).abs() <= 1e-10);
            prop_assert!(r.min_eigenvalue().unwrap() >= -1e-10);
            Ok(())
        }),
    );
    let mut runner = TestRunner::new(config.clone());
    record(
        &mut failures,
        "scattering walks unitary",
        runner.run(&(3usize..8, 0.0f64..6.3), |(n, phase)| {
            let g = Graph::complete(n, false).unwrap();
            let mut coins = vec![LocalCoin::Grover; n];
            coins[0] = LocalCoin::Reflective { phase };
            let w = ScatteringWalk::build(&g, &coins).unwrap();
            let s = w.run(&w.uniform_state(), 7).unwrap();
            prop_assert!((s.amplitudes().norm() - 1.0).abs() <= 1e-10);
            Ok(())
        }),
    );
    let mut runner = TestRunner::new(config.clone());
    record(
        &mut failures,
        "Grover state stays normalized",
        runner.run(&(2usize..2000, 0usize..30), |(n, m)| {
            let r = grover_run(n, &[n / 2], Steps::Fixed(m)).unwrap();
            prop_assert!((r.state.amplitudes().norm() - 1.0).abs() <= 1e-10);
            prop_assert!((r.success - grover_success_closed_form(n, 1, m)).abs() <= 1e-9);
            Ok(())
        }),
    );
    let mut runner = TestRunner::new(config.clone());
    record(
        &mut failures,
        "Szegedy operator unitary",
        runner.run(&(2usize..7, any::<u64>()), |(n, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = szegedy_build(&random_symmetric_chain(n, 0.7, &mut rng)).unwrap();
            prop_assert!(unitarity_defect(w.w()) <= 1e-10);
            Ok(())
        }),
    );
    let mut runner = TestRunner::new(config.clone());
    record(
        &mut failures,
        "subset walk rounds preserve the norm",
        runner.run(&(4usize..9, 0usize..3, 1usize..4), |(n, a, tau1)| {
            let p = SubsetProblem::collision(n, a, n - 1).unwrap();
            let (_, queries) = subset_success_curve(&p, 2, tau1, 3).unwrap();
            let mut w = SubsetWalk::new(&p, 2).unwrap();
            let mut st = w.initial_state();
            for _ in 0..3 {
                w.apply_round(&mut st, tau1);
            }
            prop_assert!((st.norm() - 1.0).abs() <= 1e-10);
            prop_assert_eq!(w.queries(), queries);
            Ok(())
        }),
    );
    let mut runner = TestRunner::new(config);
    record(
        &mut failures,
        "continuous-time evolution conserves probability",
        runner.run(&(3usize..10, 0.0f64..50.0), |(n, t)| {
            let h = Hamiltonian::laplacian(&Graph::cycle(n).unwrap()).unwrap();
            let out = ctqw_run(&h, t, &QuantumState::basis(n, 0)).unwrap();
            prop_assert!((out.amplitudes().norm() - 1.0).abs() <= 1e-10);
            Ok(())
        }),
    );
    let ok = failures.is_empty();
    assert!(verdict(21, "randomized invariant suites, 128 cases each", ok, failures.join("; ")));
}
