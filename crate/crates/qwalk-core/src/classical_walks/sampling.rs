use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

/// State space with an energy function and a symmetric proposal.
pub trait EnergyModel {
    type State: Clone + PartialEq + std::fmt::Debug;

    fn random_state<R: Rng>(&self, rng: &mut R) -> Self::State;
    fn energy(&self, s: &Self::State) -> f64;
    /// Must satisfy q(x→y) = q(y→x).
    fn propose<R: Rng>(&self, s: &Self::State, rng: &mut R) -> Self::State;

    /// Every state, when the space is small enough to enumerate.
    fn states(&self) -> Option<Vec<Self::State>> {
        None
    }

    /// |Ω|
    fn state_count(&self) -> f64;
}

/// Finite model with explicit energies; proposes a uniformly random other state.
#[derive(Debug, Clone, PartialEq)]
pub struct TableModel {
    pub energies: Vec<f64>,
}

impl TableModel {
    pub fn new(energies: Vec<f64>) -> Result<Self> {
        if energies.len() < 2 || energies.iter().any(|e| !e.is_finite()) {
            return invalid("table model needs at least two finite energies");
        }
        Ok(Self { energies })
    }

    /// Column-stochastic Metropolis matrix M[(to, from)].
    pub fn metropolis_matrix(&self, beta: f64) -> DMatrix<f64> {
        let n = self.energies.len();
        let q = 1.0 / (n - 1) as f64;
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            let mut stay = 1.0;
            for k in 0..n {
                if k == j {
                    continue;
                }
                let de = self.energies[k] - self.energies[j];
                let acc = if de <= 0.0 { 1.0 } else { (-beta * de).exp() };
                m[(k, j)] = q * acc;
                stay -= q * acc;
            }
            m[(j, j)] = stay;
        }
        m
    }
}

impl EnergyModel for TableModel {
    type State = usize;

    fn random_state<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.energies.len())
    }
    fn energy(&self, s: &usize) -> f64 {
        self.energies[*s]
    }
    fn propose<R: Rng>(&self, s: &usize, rng: &mut R) -> usize {
        let k = rng.gen_range(0..self.energies.len() - 1);
        if k >= *s {
            k + 1
        } else {
            k
        }
    }
    fn states(&self) -> Option<Vec<usize>> {
        Some((0..self.energies.len()).collect())
    }
    fn state_count(&self) -> f64 {
        self.energies.len() as f64
    }
}

/// Ising chain E = −J Σ s_i s_{i+1} − h Σ s_i, single spin-flip proposals.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingChain {
    pub n: usize,
    pub j: f64,
    pub h: f64,
    pub periodic: bool,
}

impl EnergyModel for IsingChain {
    type State = Vec<i8>;

    fn random_state<R: Rng>(&self, rng: &mut R) -> Vec<i8> {
        (0..self.n).map(|_| if rng.gen() { 1 } else { -1 }).collect()
    }
    fn energy(&self, s: &Vec<i8>) -> f64 {
        let mut e = 0.0;
        for i in 0..self.n {
            let nb = if i + 1 < self.n {
                Some(s[i + 1])
            } else if self.periodic && self.n > 2 {
                Some(s[0])
            } else {
                None
            };
            if let Some(b) = nb {
                e -= self.j * (s[i] * b) as f64;
            }
            e -= self.h * s[i] as f64;
        }
        e
    }
    fn propose<R: Rng>(&self, s: &Vec<i8>, rng: &mut R) -> Vec<i8> {
        let mut t = s.clone();
        let i = rng.gen_range(0..self.n);
        t[i] = -t[i];
        t
    }
    fn states(&self) -> Option<Vec<Vec<i8>>> {
        if self.n > 20 {
            return None;
        }
        Some(
            (0..1u32 << self.n)
                .map(|m| (0..self.n).map(|i| if m >> i & 1 == 1 { 1 } else { -1 }).collect())
                .collect(),
        )
    }
    fn state_count(&self) -> f64 {
        2f64.powi(self.n as i32)
    }
}

/// E(x) = scale·(x − center)² on x ∈ 0..n; proposes x ± 1 and stays put at the walls.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModel {
    pub n: usize,
    pub center: f64,
    pub scale: f64,
}

impl EnergyModel for QuadraticModel {
    type State = usize;

    fn random_state<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.n)
    }
    fn energy(&self, s: &usize) -> f64 {
        self.scale * (*s as f64 - self.center).powi(2)
    }
    fn propose<R: Rng>(&self, s: &usize, rng: &mut R) -> usize {
        if rng.gen() {
            if *s + 1 < self.n {
                s + 1
            } else {
                *s
            }
        } else if *s > 0 {
            s - 1
        } else {
            *s
        }
    }
    fn states(&self) -> Option<Vec<usize>> {
        Some((0..self.n).collect())
    }
    fn state_count(&self) -> f64 {
        self.n as f64
    }
}

#[derive(Debug, Clone)]
pub struct MetropolisRun<S> {
    /// state after each step
    pub samples: Vec<S>,
    pub proposed: usize,
    pub accepted: usize,
}

impl<S> MetropolisRun<S> {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

/// One Metropolis update; returns whether the proposal was accepted.
pub fn metropolis_step<M: EnergyModel, R: Rng>(model: &M, state: &mut M::State, beta: f64, rng: &mut R) -> bool {
    let cand = model.propose(state, rng);
    let de = model.energy(&cand) - model.energy(state);
    let accept = de <= 0.0 || rng.gen::<f64>() < (-beta * de).exp();
    if accept {
        *state = cand;
    }
    accept
}

pub fn metropolis_from<M: EnergyModel, R: Rng>(
    model: &M,
    init: M::State,
    beta: f64,
    steps: usize,
    rng: &mut R,
) -> Result<MetropolisRun<M::State>> {
    if !(beta >= 0.0) {
        return invalid("beta must be nonnegative");
    }
    let mut s = init;
    let mut samples = Vec::with_capacity(steps);
    let mut accepted = 0;
    for _ in 0..steps {
        if metropolis_step(model, &mut s, beta, rng) {
            accepted += 1;
        }
        samples.push(s.clone());
    }
    Ok(MetropolisRun { samples, proposed: steps, accepted })
}

pub fn metropolis_chain<M: EnergyModel>(model: &M, beta: f64, steps: usize, seed: u64) -> Result<MetropolisRun<M::State>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let init = model.random_state(&mut rng);
    metropolis_from(model, init, beta, steps, &mut rng)
}

#[derive(Debug, Clone)]
pub struct AnnealResult<S> {
    pub state: S,
    pub energy: f64,
    pub rounds: usize,
}

/// Geometric cooling T ← μT with `inner_steps` Metropolis updates per temperature.
pub fn simulated_annealing<M: EnergyModel>(
    model: &M,
    t0: f64,
    mu: f64,
    t_min: f64,
    inner_steps: usize,
    seed: u64,
) -> Result<AnnealResult<M::State>> {
    if !(mu > 0.0 && mu < 1.0) {
        return invalid("cooling factor must lie in (0, 1)");
    }
    if !(t0 > 0.0 && t_min > 0.0) {
        return invalid("temperatures must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = model.random_state(&mut rng);
    let mut t = t0;
    let mut rounds = 0;
    while t > t_min {
        for _ in 0..inner_steps {
            metropolis_step(model, &mut s, 1.0 / t, &mut rng);
        }
        t *= mu;
        rounds += 1;
    }
    let energy = model.energy(&s);
    Ok(AnnealResult { state: s, energy, rounds })
}

/// Z(β) = Σ e^{−βE} by enumeration.
pub fn partition_function<M: EnergyModel>(model: &M, beta: f64) -> Option<f64> {
    Some(model.states()?.iter().map(|s| (-beta * model.energy(s)).exp()).sum())
}

/// E_{π_β0}[e^{−(β1−β0)E}] by enumeration; equals Z(β1)/Z(β0).
pub fn exact_expectation_y<M: EnergyModel>(model: &M, beta0: f64, beta1: f64) -> Option<f64> {
    let states = model.states()?;
    let z0: f64 = states.iter().map(|s| (-beta0 * model.energy(s)).exp()).sum();
    let num: f64 = states
        .iter()
        .map(|s| {
            let e = model.energy(s);
            (-beta0 * e).exp() * (-(beta1 - beta0) * e).exp()
        })
        .sum();
    Some(num / z0)
}

/// ℓ+1 inverse temperatures equally spaced in [0, β_F].
pub fn linear_schedule(beta_final: f64, levels: usize) -> Vec<f64> {
    if levels == 0 {
        return vec![0.0, 0.0];
    }
    (0..=levels).map(|i| beta_final * i as f64 / levels as f64).collect()
}

#[derive(Debug, Clone)]
pub struct TelescopeReport {
    pub z_hat: f64,
    pub alpha_hat: Vec<f64>,
    /// whether each estimated ratio is at least 1/2
    pub alpha_ge_half: Vec<bool>,
}

#[derive(Debug, Clone, Copy)]
pub struct TelescopeOptions {
    pub samples_per_level: usize,
    pub burn_in: usize,
    pub thin: usize,
}

/// Ẑ = |Ω|·∏ Ȳ_i with Y_i = e^{−(β_{i+1}−β_i)E(X_i)}, X_i drawn by Metropolis at β_i.
pub fn telescoping_partition_estimate<M: EnergyModel>(
    model: &M,
    schedule: &[f64],
    opts: TelescopeOptions,
    seed: u64,
) -> Result<TelescopeReport> {
    if schedule.len() < 2 {
        return invalid("schedule needs at least two inverse temperatures");
    }
    if schedule[0] != 0.0 || schedule.windows(2).any(|w| w[1] < w[0]) {
        return invalid("schedule must start at 0 and be nondecreasing");
    }
    if opts.samples_per_level == 0 || opts.thin == 0 {
        return invalid("need at least one sample per level and thin >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = model.state_count();
    let mut alpha_hat = Vec::with_capacity(schedule.len() - 1);
    for w in schedule.windows(2) {
        let (b0, b1) = (w[0], w[1]);
        if b1 == b0 {
            alpha_hat.push(1.0);
            continue;
        }
        let mut s = model.random_state(&mut rng);
        for _ in 0..opts.burn_in {
            metropolis_step(model, &mut s, b0, &mut rng);
        }
        let mut acc = 0.0;
        for _ in 0..opts.samples_per_level {
            for _ in 0..opts.thin {
                metropolis_step(model, &mut s, b0, &mut rng);
            }
            acc += (-(b1 - b0) * model.energy(&s)).exp();
        }
        let a = acc / opts.samples_per_level as f64;
        z *= a;
        alpha_hat.push(a);
    }
    let alpha_ge_half = alpha_hat.iter().map(|&a| a >= 0.5).collect();
    Ok(TelescopeReport { z_hat: z, alpha_hat, alpha_ge_half })
}
