use std::f64::consts::{FRAC_2_PI, PI};

use qwalk_core::classical_walks::*;
use qwalk_core::coined_walks::*;
use qwalk_core::core_math::{cr, tvd, ComplexVector, Distribution, QuantumState, C64};
use qwalk_core::ctqw::*;
use qwalk_core::graphs::Graph;
use qwalk_core::grover_search::*;
use qwalk_core::scattering_walks::*;
use qwalk_core::subset_search::*;
use qwalk_core::szegedy::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{ensure, CliError};
use crate::output::{Cell, Output, Table};
use crate::params::{p, Kind, ParamSpec, Params};

type Run = fn(&Params, Option<u64>) -> Result<Output, CliError>;

pub struct Experiment {
    pub name: &'static str,
    /// what the data reproduces
    pub anchor: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    /// whether a seed is required for these parameters
    pub stochastic: fn(&Params) -> bool,
    pub run: Run,
}

fn never(_: &Params) -> bool {
    false
}

fn always(_: &Params) -> bool {
    true
}

const NORM: f64 = 1e-9;

fn norm_check(total: f64, what: &str) -> Result<(), CliError> {
    ensure((total - 1.0).abs() <= NORM, || format!("{what}: total probability {total}"))
}

fn spread(n: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| i * n / k).collect()
}

fn dist_table(d: &Distribution) -> Table {
    let mut t = Table::new("", &["position", "probability"]);
    for (&x, &q) in d.labels().iter().zip(d.probs()) {
        t.row(&[Cell::I(x), Cell::F(q)]);
    }
    t
}

fn hadamard_walk(m: usize) -> Result<CoinedWalk, CliError> {
    Ok(CoinedWalk::line(coin(CoinKind::Hadamard)?, m)?)
}

fn line_walk(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let m = p.usize("m")?;
    let ch = line_chain(m)?;
    let d = ch.evolve(&ch.delta(line_index(m, 0))?, m)?;
    norm_check(d.probs().iter().sum(), "line walk")?;
    let s = d.stats();
    Ok(Output::default().table(dist_table(&d)).put("mean", s.mean).put("variance", s.variance).put("entropy", s.entropy))
}

fn hadamard_line(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let m = p.usize("m")?;
    let w = hadamard_walk(m)?;
    let amps = initial_symmetry(p.float("q"), p.float("sigma"))?;
    let psi = w.state_at_label(0, &amps)?;
    let d = w.position_distribution(&w.run(&psi, m)?)?;
    norm_check(d.probs().iter().sum(), "Hadamard walk")?;
    let s = d.stats();
    let x2 = s.variance + s.mean * s.mean;
    Ok(Output::default()
        .table(dist_table(&d))
        .put("mean", s.mean)
        .put("second_moment_over_m2", if m > 0 { x2 / (m * m) as f64 } else { 0.0 })
        .put("entropy", s.entropy))
}

fn entropy_series(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let m_max = p.usize("m_max")?;
    let w = hadamard_walk(m_max)?;
    let ch = line_chain(m_max)?;
    let mut v = w.state_at_label(0, &[cr(1.0), cr(0.0)])?.into_vector();
    let mut c = ch.delta(line_index(m_max, 0))?.probs().to_vec();
    let mut t = Table::new("", &["step", "classical", "hadamard", "log_support"]);
    let (mut sc, mut sh) = (0.0, 0.0);
    for m in 0..=m_max {
        sc = ch.distribution(c.clone())?.entropy();
        sh = Distribution::from_weights(w.labels().to_vec(), w.position_distribution_vec(&v))?.entropy();
        t.row(&[Cell::U(m), Cell::F(sc), Cell::F(sh), Cell::F(((m + 1) as f64).ln())]);
        v = w.step_vec(&v);
        c = ch.step_vec(&c);
    }
    Ok(Output::default()
        .table(t)
        .put("classical_final", sc)
        .put("hadamard_final", sh)
        .put("classical_gaussian_estimate", (1.0 + (PI * m_max.max(1) as f64 / 2.0).ln()) / 2.0))
}

fn decoherence_sweep(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let m = p.usize("m")?;
    let meas = match p.word("measurement") {
        "coin" => Measurement::Coin,
        "position" => Measurement::Position,
        _ => Measurement::Both,
    };
    let w = hadamard_walk(m)?;
    let rho0 = DensityState::pure(&w.state_at_label(0, &[cr(1.0), cr(0.0)])?);
    let mut t = Table::new("", &["p", "position", "probability"]);
    let mut out = Output::default();
    let mut variances = serde_json::Map::new();
    for &pr in p.floats("ps") {
        let rho = decohere_evolve(&w, pr, meas, &rho0, m)?;
        ensure((rho.trace() - 1.0).abs() <= NORM, || format!("trace {} at p={pr}", rho.trace()))?;
        let d = rho.position_distribution(&w)?;
        for (&x, &q) in d.labels().iter().zip(d.probs()) {
            t.row(&[Cell::F(pr), Cell::I(x), Cell::F(q)]);
        }
        variances.insert(format!("{pr}"), Value::from(d.stats().variance));
    }
    out.set("variance_by_p", Value::Object(variances));
    Ok(out.table(t))
}

fn absorbing_boundary(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let m_max = p.usize("m_max")?;
    let a = absorbing_line_quantum(m_max)?;
    let mut t = Table::new("", &["step", "absorbed", "cumulative"]);
    for (i, (x, c)) in a.per_step.iter().zip(&a.cumulative).enumerate() {
        t.row(&[Cell::U(i + 1), Cell::F(*x), Cell::F(*c)]);
    }
    Ok(Output::default()
        .table(t)
        .put("final_cumulative", a.total())
        .put("two_over_pi", FRAC_2_PI)
        .put("classical_cumulative", line_absorption_cumulative(m_max)?))
}

fn complete_graph(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let out = complete_graph_search(p.usize("n")?, p.usize("k")?, p.auto_usize("steps"))?;
    let width = out.trajectory.first().map_or(0, |r| r.len());
    let header: Vec<String> = std::iter::once("step".to_string()).chain((1..=width).map(|j| format!("w{j}"))).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new("", &header);
    for (s, row) in out.trajectory.iter().enumerate() {
        norm_check(row.iter().sum(), "reduced walk")?;
        let mut cells = vec![Cell::U(s)];
        cells.extend(row.iter().map(|&x| Cell::F(x)));
        t.row(&cells);
    }
    Ok(Output::default()
        .table(t)
        .put("steps", out.steps)
        .put("success", out.success)
        .put("best_steps", out.best_steps)
        .put("best_success", out.best_success))
}

fn star_search(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let out = star_graph_search(p.usize("n")?, p.float("r0"))?;
    let mut t = Table::new("", &["step", "w1", "w2", "w3", "w4", "w5"]);
    for (s, row) in out.trajectory.iter().enumerate() {
        norm_check(row.iter().sum(), "star reduction")?;
        t.row(&[Cell::U(s), Cell::F(row[0]), Cell::F(row[1]), Cell::F(row[2]), Cell::F(row[3]), Cell::F(row[4])]);
    }
    Ok(Output::default()
        .table(t)
        .put("delta", out.delta)
        .put("opt_steps", out.opt_steps)
        .put("triangle", out.triangle)
        .put("best_steps", out.best_steps)
        .put("best_triangle", out.best_triangle))
}

fn grover(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let (n, k) = (p.usize("n")?, p.usize("k")?);
    let steps = p.auto_usize("steps").map_or(Steps::Auto, Steps::Fixed);
    let r = grover_run(n, &spread(n, k.min(n)), steps)?;
    let mut t = Table::new("", &["step", "success", "closed_form"]);
    for (m, c) in r.trajectory.components.iter().enumerate() {
        let closed = grover_success_closed_form(n, k, m);
        ensure((c[0] * c[0] - closed).abs() <= NORM, || format!("step {m}: {} vs {closed}", c[0] * c[0]))?;
        t.row(&[Cell::U(m), Cell::F(c[0] * c[0]), Cell::F(closed)]);
    }
    Ok(Output::default()
        .table(t)
        .put("steps", r.steps)
        .put("queries", r.queries)
        .put("success", r.success)
        .put("theta", r.trajectory.theta))
}

fn fixed_point(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let (n, k) = (p.usize("n")?, p.usize("k")?);
    let base = match p.word("base") {
        "identity" => FixedPointBase::Identity,
        _ => FixedPointBase::GroverIterate,
    };
    let levels = p.usize("levels")?;
    if levels > 12 {
        return Err(CliError::Param("levels must be at most 12".into()));
    }
    let s = fixed_point_series(levels as u32, n, &spread(n, k.min(n)), base)?;
    let mut t = Table::new("", &["level", "failure", "cubed_previous", "queries"]);
    let mut prev: Option<f64> = None;
    for l in &s {
        ensure(l.queries == fixed_point_queries(l.level, base.cost()), || format!("ledger at level {}", l.level))?;
        let cube = prev.map_or(l.failure, |f| f.powi(3));
        ensure((l.failure - cube).abs() <= NORM, || format!("failure does not cube at level {}", l.level))?;
        t.row(&[Cell::U(l.level as usize), Cell::F(l.failure), Cell::F(cube), Cell::U(l.queries as usize)]);
        prev = Some(l.failure);
    }
    let last = s.last().expect("level 0 is always present");
    Ok(Output::default().table(t).put("final_failure", last.failure).put("final_queries", last.queries))
}

fn chain_needs_seed(p: &Params) -> bool {
    p.word("chain") == "random"
}

fn szegedy_spectrum(p: &Params, seed: Option<u64>) -> Result<Output, CliError> {
    let n = p.usize("n")?;
    let chain = match p.word("chain") {
        "complete" => complete_graph_chain(n)?,
        _ => {
            if n < 2 {
                return Err(CliError::Param("n must be at least 2".into()));
            }
            let density = p.float("density");
            if !(density > 0.0 && density <= 1.0) {
                return Err(CliError::Param("density must lie in (0, 1]".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed.expect("seed checked by the runner"));
            random_symmetric_chain(n, density, &mut rng)
        }
    };
    let m = spectrum_map(&chain)?;
    ensure(m.max_pair_error <= 1e-8 && m.residual_error <= 1e-8, || {
        format!("pair error {} residual {}", m.max_pair_error, m.residual_error)
    })?;
    let mut t = Table::new("", &["lambda_D", "predicted", "phase_plus", "phase_minus", "error"]);
    for pr in &m.pairs {
        t.row(&[Cell::F(pr.lambda), Cell::F(pr.predicted), Cell::F(pr.measured[0]), Cell::F(pr.measured[1]), Cell::F(pr.error)]);
    }
    let mut r = Table::new("residual", &["phase"]);
    for &ph in &m.residual_phases {
        r.row(&[Cell::F(ph)]);
    }
    Ok(Output::default()
        .table(t)
        .table(r)
        .put("max_pair_error", m.max_pair_error)
        .put("residual_error", m.residual_error))
}

fn marked_gap(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let n = p.usize("n")?;
    let chain = complete_graph_chain(n)?;
    let mut t = Table::new("", &["marked", "norm", "norm_bound", "phi0", "phi0_bound"]);
    for &k in p.floats("marked") {
        if k.fract() != 0.0 || k < 1.0 || k as usize >= n {
            return Err(CliError::Param(format!("marked counts must be integers in 1..{n}, got {k}")));
        }
        let marked: Vec<usize> = (0..k as usize).collect();
        let m = marked_modify(&chain, &marked)?;
        let g = marked_phase_gap(&chain, &marked)?;
        ensure(m.bound_holds() && g.bound_holds(), || format!("bound violated at |M| = {k}"))?;
        t.row(&[Cell::U(k as usize), Cell::F(m.norm), Cell::F(m.bound), Cell::F(g.phi0), Cell::F(g.bound)]);
    }
    Ok(Output::default().table(t))
}

fn subset_find(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let problem = SubsetProblem::collision(p.usize("n")?, p.usize("a")?, p.usize("b")?)?;
    let schedule = match (p.auto_usize("tau1"), p.auto_usize("tau2")) {
        (Some(tau1), Some(tau2)) => Schedule::Fixed { tau1, tau2 },
        (None, None) => Schedule::Auto,
        _ => return Err(CliError::Param("tau1 and tau2 must both be auto or both be set".into())),
    };
    let r = subset_walk_run(&problem, p.usize("q")?, schedule)?;
    let mut t = Table::new("", &["round", "success"]);
    for (i, &s) in r.curve.iter().enumerate() {
        t.row(&[Cell::U(i), Cell::F(s)]);
    }
    let mut out = Output::default()
        .table(t)
        .put("tau1", r.tau1)
        .put("tau2", r.tau2)
        .put("success", r.success)
        .put("queries", r.queries)
        .put("left_mass", r.left_mass);
    if let Some(best) = r.window_optimum {
        out = out.put("window_best_tau1", best.tau1).put("window_best_tau2", best.tau2).put("window_best_success", best.success);
    }
    Ok(out)
}

fn cost_table(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let k = p.usize("k")?;
    let variant: CostVariant = p.word("variant").parse()?;
    let points = p.usize("points")?.max(2);
    let terms = cost_model(k, 0.0, variant)?.terms();
    let mut header = vec!["mu".to_string(), "exponent".to_string()];
    header.extend(terms.iter().map(|t| t.name.to_string()));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut t = Table::new("", &header);
    for i in 0..points {
        let mu = i as f64 / (points - 1) as f64;
        let model = cost_model(k, mu, variant)?;
        let mut cells = vec![Cell::F(mu), Cell::F(model.exponent())];
        let ex: Vec<f64> = model.terms().iter().map(|t| t.exponent(mu)).collect();
        cells.extend(ex.iter().map(|&e| Cell::F(e)));
        t.row(&cells);
    }
    let (mu, exponent) = optimal_mu(k, variant)?;
    Ok(Output::default()
        .table(t)
        .put("optimal_mu", mu)
        .put("optimal_exponent", exponent)
        .put("stated_exponent", stated_optimal_exponent(k, variant)?))
}

fn ctqw_cycle(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let rows = cycle_bessel_profile(p.usize("n")?, p.usize("x")?, p.float("t"), p.usize("max_offset")?)?;
    let mut t = Table::new("", &["position", "probability", "bessel"]);
    for r in &rows {
        t.row(&[Cell::I(r.offset), Cell::F(r.exact), Cell::F(r.bessel)]);
    }
    let worst = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    Ok(Output::default().table(t).put("max_deviation", worst))
}

fn time_grid(t_max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(t_max >= 0.0) || points < 2 {
        return Err(CliError::Param("need t_max >= 0 and at least 2 points".into()));
    }
    Ok((0..points).map(|i| t_max * i as f64 / (points - 1) as f64).collect())
}

fn ctqw_hypercube(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let n = p.usize("n")?;
    let times = time_grid(p.float("t_max"), p.usize("points")?)?;
    let full = hypercube_antipode_full(n, &times)?;
    let mut t = Table::new("", &["t", "closed_form", "simulated"]);
    let mut worst: f64 = 0.0;
    for (&tt, &f) in times.iter().zip(&full) {
        let c = hypercube_antipode_prob(n, tt)?;
        worst = worst.max((c - f).abs());
        t.row(&[Cell::F(tt), Cell::F(c), Cell::F(f)]);
    }
    ensure(worst <= 1e-10, || format!("closed form deviates by {worst}"))?;
    Ok(Output::default().table(t).put("max_deviation", worst))
}

fn glued_needs_seed(p: &Params) -> bool {
    p.word("kind") == "cycle"
}

fn glued_trees(p: &Params, seed: Option<u64>) -> Result<Output, CliError> {
    let kind: GluedKind = p.word("kind").parse()?;
    let n = p.usize("n")?;
    let r = glued_trees_reduce(kind, n, seed.unwrap_or(0))?;
    let t_max = p.auto_float("t_max").unwrap_or(4.0 * n as f64);
    let dt = p.float("dt");
    if !(dt > 0.0) {
        return Err(CliError::Param("dt must be positive".into()));
    }
    let prop = CtqwPropagator::new(&Hamiltonian::weighted_line(&r.line)?);
    let exit = r.line.nodes() - 1;
    let mut t = Table::new("", &["t", "entrance", "exit"]);
    let steps = (t_max / dt).floor() as usize;
    for i in 0..=steps {
        let tt = i as f64 * dt;
        let col = prop.column(tt, 0);
        t.row(&[Cell::F(tt), Cell::F(col[0].norm_sqr()), Cell::F(col[exit].norm_sqr())]);
    }
    let mut w = Table::new("weights", &["link", "formula", "graph"]);
    for (i, (a, b)) in r.line.weights().iter().zip(&r.graph_weights).enumerate() {
        w.row(&[Cell::U(i), Cell::F(*a), Cell::F(*b)]);
    }
    let best = glued_traversal(kind, n, t_max, dt)?;
    let mut out = Output::default()
        .table(t)
        .table(w)
        .put("columns", r.line.nodes())
        .put("best_exit_probability", best.probability)
        .put("best_exit_time", best.time);
    if let Some(rep) = &r.report {
        ensure(rep.max_deviation <= 1e-8, || format!("column reduction deviates by {}", rep.max_deviation))?;
        out = out.put("reduction_deviation", rep.max_deviation).put("reduction_leakage", rep.max_leakage);
    }
    Ok(out)
}

fn analog(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let (n, m) = (p.usize("n")?, p.usize("m")?);
    if m == 0 || m >= n {
        return Err(CliError::Param("need 1 <= m < n".into()));
    }
    if n > 2048 {
        return Err(CliError::Param("dense simulation supports n <= 2048".into()));
    }
    let big_t = analog_optimal_time(n, m);
    let times = time_grid(p.auto_float("t_max").unwrap_or(2.0 * big_t), p.usize("points")?)?;
    let pts = analog_search(n, &spread(n, m), &times)?;
    let mut t = Table::new("", &["t", "simulated", "closed_form", "leakage"]);
    let mut worst: f64 = 0.0;
    for q in &pts {
        worst = worst.max((q.simulated - q.closed_form).abs());
        t.row(&[Cell::F(q.t), Cell::F(q.simulated), Cell::F(q.closed_form), Cell::F(q.leakage)]);
    }
    ensure(worst <= 1e-9, || format!("closed form deviates by {worst}"))?;
    let at_t = analog_search(n, &spread(n, m), &[big_t])?[0].simulated;
    Ok(Output::default().table(t).put("optimal_time", big_t).put("success_at_optimal_time", at_t).put("max_deviation", worst))
}

fn nand(p: &Params, seed: Option<u64>) -> Result<Output, CliError> {
    let depth = p.usize("depth")?;
    if depth > 16 {
        return Err(CliError::Param("depth must be at most 16".into()));
    }
    let trials = p.usize("trials")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.expect("seed checked by the runner"));
    let hard = p.word("instance") == "hard";
    let mut t = Table::new("", &["tree", "ratio_bit", "boolean_bit", "root_ratio", "mean_queries"]);
    let (mut mismatches, mut total) = (0usize, 0.0);
    let trees = p.usize("trees")?;
    for i in 0..trees {
        let tree = if hard {
            NandTree::hard_instance(depth as u32, i % 2 == 1, &mut rng)?
        } else {
            NandTree::random_balanced(depth as u32, &mut rng)?
        };
        let e = nand_eval(&tree);
        mismatches += usize::from(e.ratio_bit != e.boolean_bit);
        let q = if trials > 0 { classical_nand_cost(&tree, &mut rng, trials)? } else { f64::NAN };
        total += q;
        t.row(&[Cell::U(i), Cell::B(e.ratio_bit), Cell::B(e.boolean_bit), Cell::F(e.root_ratio), Cell::F(q)]);
    }
    ensure(mismatches == 0, || format!("{mismatches} ratio classifications differ from the boolean value"))?;
    let leaves = (1usize << depth) as f64;
    let mean = total / trees.max(1) as f64;
    let game = nand_eval(&nand_game_instance());
    Ok(Output::default()
        .table(t)
        .put("leaves", leaves)
        .put("mean_queries", mean)
        .put("query_exponent", if depth > 0 && trials > 0 { mean.ln() / leaves.ln() } else { f64::NAN })
        .put("game_instance_value", u8::from(game.boolean_bit)))
}

fn mcmc_partition(p: &Params, seed: Option<u64>) -> Result<Output, CliError> {
    let model = TableModel::new(p.floats("energies").to_vec())?;
    let schedule = linear_schedule(p.float("beta"), p.usize("levels")?);
    let opts = TelescopeOptions {
        samples_per_level: p.usize("samples")?,
        burn_in: p.usize("burn_in")?,
        thin: p.usize("thin")?.max(1),
    };
    let r = telescoping_partition_estimate(&model, &schedule, opts, seed.expect("seed checked by the runner"))?;
    let mut t = Table::new("", &["level", "beta_from", "beta_to", "alpha_hat", "alpha_exact"]);
    for (i, w) in schedule.windows(2).enumerate() {
        let exact = exact_expectation_y(&model, w[0], w[1]).unwrap_or(f64::NAN);
        t.row(&[Cell::U(i), Cell::F(w[0]), Cell::F(w[1]), Cell::F(r.alpha_hat[i]), Cell::F(exact)]);
    }
    let z = partition_function(&model, *schedule.last().expect("schedule is nonempty")).unwrap_or(f64::NAN);
    Ok(Output::default().table(t).put("z_hat", r.z_hat).put("z_exact", z).put("relative_error", (r.z_hat / z - 1.0).abs()))
}

fn annealing(p: &Params, seed: Option<u64>) -> Result<Output, CliError> {
    let seed = seed.expect("seed checked by the runner");
    let (t0, mu, t_min, inner) = (p.float("t0"), p.float("mu"), p.float("t_min"), p.usize("inner")?);
    let runs = p.usize("runs")?;
    let n = p.usize("n")?;
    let mut t = Table::new("", &["run", "energy", "rounds"]);
    let mut best = f64::INFINITY;
    let exact = match p.word("model") {
        "quadratic" => {
            let m = QuadraticModel { n, center: p.float("center"), scale: 1.0 };
            for r in 0..runs {
                let a = simulated_annealing(&m, t0, mu, t_min, inner, seed.wrapping_add(r as u64))?;
                best = best.min(a.energy);
                t.row(&[Cell::U(r), Cell::F(a.energy), Cell::U(a.rounds)]);
            }
            min_energy(&m)
        }
        _ => {
            if n > 24 {
                return Err(CliError::Param("Ising chains are limited to n <= 24".into()));
            }
            let m = IsingChain { n, j: p.float("j"), h: p.float("h"), periodic: true };
            for r in 0..runs {
                let a = simulated_annealing(&m, t0, mu, t_min, inner, seed.wrapping_add(r as u64))?;
                best = best.min(a.energy);
                t.row(&[Cell::U(r), Cell::F(a.energy), Cell::U(a.rounds)]);
            }
            min_energy(&m)
        }
    };
    let mut out = Output::default().table(t).put("best_energy", best);
    if let Some(e) = exact {
        out = out.put("exact_minimum", e);
    }
    Ok(out)
}

fn min_energy<M: EnergyModel>(m: &M) -> Option<f64> {
    m.states().map(|s| s.iter().map(|x| m.energy(x)).fold(f64::INFINITY, f64::min))
}

fn coined_on(g: &Graph, name: &str) -> Result<CoinedWalk, CliError> {
    let d = g.regular_degree().ok_or_else(|| CliError::Param("the coined walk needs a regular graph".into()))?;
    let kind = match (name, d) {
        ("hadamard", 2) | ("auto", 2) => CoinKind::Hadamard,
        ("hadamard", _) => return Err(CliError::Param("the Hadamard coin needs degree 2".into())),
        _ => CoinKind::Grover(d),
    };
    Ok(CoinedWalk::on_graph(g, coin(kind)?)?)
}

fn uniform_coin_state(w: &CoinedWalk, x: usize) -> Result<QuantumState, CliError> {
    let a = vec![C64::new(1.0 / (w.d() as f64).sqrt(), 0.0); w.d()];
    Ok(w.state(x, &a)?)
}

fn mixing(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let g = p.graph("graph")?;
    let (start, eps, t_max) = (p.usize("start")?, p.float("eps"), p.usize("t_max")?);
    if start >= g.n() {
        return Err(CliError::Param("start vertex outside the graph".into()));
    }
    let ch = unbiased_chain(&g)?;
    let pi = ch.stationary_and_limit()?.pi;
    let w = coined_on(&g, p.word("coin"))?;
    let psi0 = uniform_coin_state(&w, start)?;
    let qpi = quantum_limit_dist(&w, &psi0)?;
    let mut t = Table::new("", &["t", "classical_tvd", "quantum_average_tvd"]);
    let mut c = ch.delta(start)?.probs().to_vec();
    let mut v: ComplexVector = psi0.amplitudes().clone();
    let mut acc = vec![0.0; g.n()];
    for s in 1..=t_max {
        for (a, q) in acc.iter_mut().zip(w.position_distribution_vec(&v)) {
            *a += q;
        }
        c = ch.step_vec(&c);
        v = w.step_vec(&v);
        let avg = Distribution::from_weights(w.labels().to_vec(), acc.iter().map(|a| a / s as f64).collect())?;
        t.row(&[Cell::U(s), Cell::F(tvd(&ch.distribution(c.clone())?, &pi)?), Cell::F(tvd(&avg, &qpi)?)]);
    }
    let cm = ch.mixing_time(&ch.delta(start)?, eps, t_max);
    let qm = quantum_mixing_time(&w, &psi0, eps, t_max);
    let mut out = Output::default().table(t);
    match cm {
        Ok(r) => out = out.put("classical_mixing_time", r.time).put("classical_bound", r.bound).put("lambda2", r.lambda2),
        Err(e) => out = out.put("classical_mixing_time", Value::Null).put("classical_note", e.to_string()),
    }
    match qm {
        Ok(r) => out = out.put("quantum_mixing_time", r.time).put("quantum_bound", r.bound),
        Err(e) => out = out.put("quantum_mixing_time", Value::Null).put("quantum_note", e.to_string()),
    }
    Ok(out)
}

fn hitting(p: &Params, _: Option<u64>) -> Result<Output, CliError> {
    let g = p.graph("graph")?;
    let (start, target, horizon) = (p.usize("start")?, p.usize("target")?, p.usize("horizon")?);
    if start >= g.n() || target >= g.n() {
        return Err(CliError::Param("start and target must be vertices of the graph".into()));
    }
    let ch = unbiased_chain(&g)?;
    let cl = ch.hitting_time(start, target, horizon)?;
    let w = coined_on(&g, p.word("coin"))?;
    let q = hitting_analysis(&w, &uniform_coin_state(&w, start)?, target, horizon, p.float("p"))?;
    let mut t = Table::new("", &["step", "classical_first_hit", "classical_cumulative", "quantum_one_shot", "quantum_first_hit"]);
    for m in 0..=horizon {
        t.row(&[
            Cell::U(m),
            Cell::F(cl.first_hit[m]),
            Cell::F(cl.cumulative(m)),
            Cell::F(q.one_shot[m]),
            Cell::F(q.first_hit[m]),
        ]);
    }
    Ok(Output::default()
        .table(t)
        .put("classical_truncated_mean", cl.truncated_mean)
        .put("classical_mass_beyond", cl.mass_beyond)
        .put("quantum_detected", q.first_hit.iter().sum::<f64>())
        .put("quantum_concurrent_time", q.concurrent.map_or(Value::Null, Value::from)))
}

const MEASUREMENTS: &[&str] = &["both", "coin", "position"];
const COINS: &[&str] = &["auto", "grover", "hadamard"];

pub const EXPERIMENTS: &[Experiment] = &[
    Experiment {
        name: "line-walk",
        anchor: "classical line walk: binomial distribution after m steps",
        about: "Exact distribution of the unbiased walk on the line started at 0",
        params: &[p("m", Kind::Int, "100", "steps")],
        stochastic: never,
        run: line_walk,
    },
    Experiment {
        name: "hadamard-line",
        anchor: "Hadamard walk: position distribution after m steps",
        about: "Coined Hadamard walk on the line from 0 with coin state √q|↑⟩ + e^{iσ}√(1−q)|↓⟩",
        params: &[
            p("m", Kind::Int, "100", "steps"),
            p("q", Kind::Float, "1", "weight on |↑⟩"),
            p("sigma", Kind::Float, "0", "relative phase"),
        ],
        stochastic: never,
        run: hadamard_line,
    },
    Experiment {
        name: "entropy-series",
        anchor: "entropy of classical and Hadamard walks against the step count",
        about: "Shannon entropy (nats) of both position distributions for m = 0..m_max",
        params: &[p("m_max", Kind::Int, "100", "last step")],
        stochastic: never,
        run: entropy_series,
    },
    Experiment {
        name: "decoherence-sweep",
        anchor: "decohered Hadamard walk: quantum to classical crossover",
        about: "Position distributions after m steps for each unitary-step probability p",
        params: &[
            p("m", Kind::Int, "40", "steps"),
            p("ps", Kind::Floats, "0,0.25,0.5,0.75,1", "probabilities of a unitary step"),
            p("measurement", Kind::Choice(MEASUREMENTS), "both", "what the noise measures"),
        ],
        stochastic: never,
        run: decoherence_sweep,
    },
    Experiment {
        name: "absorbing-boundary",
        anchor: "Hadamard walk with an absorbing wall: total absorption 2/π",
        about: "Mass absorbed at the wall per step and cumulatively",
        params: &[p("m_max", Kind::Int, "4000", "steps")],
        stochastic: never,
        run: absorbing_boundary,
    },
    Experiment {
        name: "complete-graph-search",
        anchor: "scattering-walk search on the complete graph, reduced basis",
        about: "Probabilities on the invariant basis vectors per step",
        params: &[
            p("n", Kind::Int, "100", "vertices"),
            p("k", Kind::Int, "1", "marked vertices"),
            p("steps", Kind::AutoInt, "auto", "steps to report the success at"),
        ],
        stochastic: never,
        run: complete_graph,
    },
    Experiment {
        name: "star-search",
        anchor: "star graph with an extra edge: search for the marked triangle",
        about: "Reduced five-state evolution of the scattering walk on the star",
        params: &[p("n", Kind::Int, "400", "spikes"), p("r0", Kind::Float, "0", "reflection amplitude at the extra edge")],
        stochastic: never,
        run: star_search,
    },
    Experiment {
        name: "grover",
        anchor: "Grover iteration: success probability per query",
        about: "Simulated success against sin²((2m+1)θ/2)",
        params: &[
            p("n", Kind::Int, "1024", "items"),
            p("k", Kind::Int, "1", "marked items"),
            p("steps", Kind::AutoInt, "auto", "iterations"),
        ],
        stochastic: never,
        run: grover,
    },
    Experiment {
        name: "fixed-point",
        anchor: "π/3 fixed-point search: failure cubes per level",
        about: "Failure probability and query ledger per recursion level",
        params: &[
            p("n", Kind::Int, "64", "items"),
            p("k", Kind::Int, "3", "marked items"),
            p("levels", Kind::Int, "6", "recursion depth"),
            p("base", Kind::Choice(&["grover", "identity"]), "grover", "level-0 operator"),
        ],
        stochastic: never,
        run: fixed_point,
    },
    Experiment {
        name: "szegedy-spectrum",
        anchor: "two-register walk spectrum from the discriminant matrix",
        about: "Discriminant eigenvalues paired with walk eigenphases ±2 arccos λ",
        params: &[
            p("chain", Kind::Choice(&["random", "complete"]), "random", "symmetric chain"),
            p("n", Kind::Int, "6", "states"),
            p("density", Kind::Float, "0.6", "edge density of a random chain"),
        ],
        stochastic: chain_needs_seed,
        run: szegedy_spectrum,
    },
    Experiment {
        name: "marked-gap",
        anchor: "marked-vertex bounds ‖P_M‖ ≤ 1 − δε and φ₀ ≥ 2√(δε)",
        about: "Norm and phase-gap bounds on the complete-graph chain",
        params: &[p("n", Kind::Int, "16", "vertices"), p("marked", Kind::Floats, "1,2,4", "marked-set sizes")],
        stochastic: never,
        run: marked_gap,
    },
    Experiment {
        name: "subset-find",
        anchor: "k-subset walk: collision finding",
        about: "Success per outer round of the subset walk on a collision instance",
        params: &[
            p("n", Kind::Int, "10", "ground set size"),
            p("q", Kind::Int, "5", "subset size"),
            p("a", Kind::Int, "3", "first colliding element"),
            p("b", Kind::Int, "7", "second colliding element"),
            p("tau1", Kind::AutoInt, "auto", "walk steps per round"),
            p("tau2", Kind::AutoInt, "auto", "rounds"),
        ],
        stochastic: never,
        run: subset_find,
    },
    Experiment {
        name: "cost-table",
        anchor: "query-cost exponents of subset and clique finding",
        about: "Exponent of each cost term and their maximum against μ = log_N q",
        params: &[
            p("k", Kind::Int, "2", "subset size"),
            p("variant", Kind::Choice(&["subset", "clique", "recursive_clique"]), "subset", "problem"),
            p("points", Kind::Int, "101", "grid points on [0, 1]"),
        ],
        stochastic: never,
        run: cost_table,
    },
    Experiment {
        name: "ctqw-cycle",
        anchor: "continuous-time walk on the cycle: Bessel wavefront",
        about: "Exact probabilities against |J_d(2t)|² around the start vertex",
        params: &[
            p("n", Kind::Int, "600", "cycle length"),
            p("x", Kind::Int, "0", "start vertex"),
            p("t", Kind::Float, "20", "time"),
            p("max_offset", Kind::Int, "60", "largest |y − x|"),
        ],
        stochastic: never,
        run: ctqw_cycle,
    },
    Experiment {
        name: "ctqw-hypercube",
        anchor: "continuous-time walk on the hypercube: antipode probability",
        about: "(sin²t)ⁿ against the full 2ⁿ-dimensional evolution",
        params: &[
            p("n", Kind::Int, "6", "dimension"),
            p("t_max", Kind::Float, "3.14159265358979", "last time"),
            p("points", Kind::Int, "101", "time points"),
        ],
        stochastic: never,
        run: ctqw_hypercube,
    },
    Experiment {
        name: "glued-trees",
        anchor: "glued trees: column-state reduction to a weighted line",
        about: "ENTRANCE and EXIT column probabilities on the reduced line",
        params: &[
            p("kind", Kind::Choice(&["plain", "cycle"]), "cycle", "how the trees are glued"),
            p("n", Kind::Int, "6", "tree depth"),
            p("t_max", Kind::AutoFloat, "auto", "last time (auto: 4n)"),
            p("dt", Kind::Float, "0.01", "time step"),
        ],
        stochastic: glued_needs_seed,
        run: glued_trees,
    },
    Experiment {
        name: "analog-search",
        anchor: "analog search Hamiltonian: success against time",
        about: "Dense evolution under −|s⟩⟨s| − Σ|w⟩⟨w| against the closed form",
        params: &[
            p("n", Kind::Int, "64", "items"),
            p("m", Kind::Int, "1", "marked items"),
            p("t_max", Kind::AutoFloat, "auto", "last time (auto: twice the optimal time)"),
            p("points", Kind::Int, "101", "time points"),
        ],
        stochastic: never,
        run: analog,
    },
    Experiment {
        name: "nand",
        anchor: "NAND tree: ratio recursion and randomized classical evaluation",
        about: "Ratio classification, boolean value and mean classical queries per tree",
        params: &[
            p("depth", Kind::Int, "5", "tree depth"),
            p("trees", Kind::Int, "100", "number of trees"),
            p("trials", Kind::Int, "200", "classical evaluations per tree"),
            p("instance", Kind::Choice(&["random", "hard"]), "random", "leaf distribution"),
        ],
        stochastic: always,
        run: nand,
    },
    Experiment {
        name: "mcmc-partition",
        anchor: "telescoping-product estimate of a partition function",
        about: "Metropolis estimates of each ratio Z(β_{i+1})/Z(β_i)",
        params: &[
            p("energies", Kind::Floats, "0,0.5,1,2", "state energies"),
            p("beta", Kind::Float, "1", "final inverse temperature"),
            p("levels", Kind::Int, "8", "schedule levels"),
            p("samples", Kind::Int, "10000", "samples per level"),
            p("burn_in", Kind::Int, "100", "discarded steps per level"),
            p("thin", Kind::Int, "1", "steps between samples"),
        ],
        stochastic: always,
        run: mcmc_partition,
    },
    Experiment {
        name: "annealing",
        anchor: "simulated annealing with geometric cooling",
        about: "Final energy of independent annealing runs",
        params: &[
            p("model", Kind::Choice(&["ising", "quadratic"]), "ising", "energy model"),
            p("n", Kind::Int, "12", "spins or states"),
            p("j", Kind::Float, "1", "Ising coupling"),
            p("h", Kind::Float, "0.1", "Ising field"),
            p("center", Kind::Float, "7", "quadratic minimum"),
            p("t0", Kind::Float, "5", "initial temperature"),
            p("mu", Kind::Float, "0.95", "cooling factor"),
            p("t_min", Kind::Float, "0.01", "final temperature"),
            p("inner", Kind::Int, "100", "Metropolis steps per temperature"),
            p("runs", Kind::Int, "20", "independent runs"),
        ],
        stochastic: always,
        run: annealing,
    },
    Experiment {
        name: "mixing",
        anchor: "classical and time-averaged quantum mixing",
        about: "Distance to the limiting distribution against time",
        params: &[
            p("graph", Kind::Graph, "cycle:9", "family:size"),
            p("start", Kind::Int, "0", "start vertex"),
            p("eps", Kind::Float, "0.1", "mixing threshold"),
            p("t_max", Kind::Int, "400", "last step"),
            p("coin", Kind::Choice(COINS), "auto", "coin of the quantum walk"),
        ],
        stochastic: never,
        run: mixing,
    },
    Experiment {
        name: "hitting",
        anchor: "classical first-hit distribution and quantum hitting",
        about: "First-hit probabilities of both walks at a target vertex",
        params: &[
            p("graph", Kind::Graph, "hypercube:4", "family:size"),
            p("start", Kind::Int, "0", "start vertex"),
            p("target", Kind::Int, "15", "target vertex"),
            p("horizon", Kind::Int, "100", "last step"),
            p("p", Kind::Float, "0.5", "one-shot threshold for the concurrent time"),
            p("coin", Kind::Choice(COINS), "auto", "coin of the quantum walk"),
        ],
        stochastic: never,
        run: hitting,
    },
];

pub fn find(name: &str) -> Option<&'static Experiment> {
    EXPERIMENTS.iter().find(|e| e.name == name)
}
