use std::f64::consts::PI;

use crate::core_math::{cr, ComplexVector, QuantumState, C64};
use crate::error::{invalid, Result};

use super::oracle::{apply_diffusion, uniform_vector, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Steps {
    Fixed(usize),
    Auto,
}

/// Amplitudes on (|t⟩, |n⟩) after each step, starting at m = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoDimTrajectory {
    pub theta: f64,
    pub components: Vec<[f64; 2]>,
    /// norm of the part of ψ_m outside span{|t⟩, |n⟩}
    pub leakage: Vec<f64>,
}

impl TwoDimTrajectory {
    pub fn success(&self) -> Vec<f64> {
        self.components.iter().map(|c| c[0] * c[0]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GroverRun {
    pub steps: usize,
    pub state: QuantumState,
    pub success: f64,
    pub queries: u64,
    pub trajectory: TwoDimTrajectory,
}

/// θ with cos θ = (N − 2k)/N.
pub fn grover_theta(n: usize, k: usize) -> f64 {
    ((n as f64 - 2.0 * k as f64) / n as f64).acos()
}

/// sin²((2m+1)θ/2).
pub fn grover_success_closed_form(n: usize, k: usize, m: usize) -> f64 {
    let th = grover_theta(n, k);
    ((2 * m + 1) as f64 * th / 2.0).sin().powi(2)
}

/// round((π/4)√(N/k)), then the best of m̃ ± 2 under the exact rotation formula.
pub fn grover_auto_steps(n: usize, k: usize) -> usize {
    let m0 = (PI / 4.0 * (n as f64 / k as f64).sqrt()).round() as usize;
    let mut best = (m0, f64::MIN);
    for m in m0.saturating_sub(2)..=m0 + 2 {
        let p = grover_success_closed_form(n, k, m);
        if p > best.1 + 1e-15 {
            best = (m, p);
        }
    }
    best.0
}

fn components(v: &ComplexVector, oracle: &Oracle) -> ([f64; 2], f64) {
    let n = oracle.n();
    let k = oracle.k();
    let mut st = C64::new(0.0, 0.0);
    let mut sn = C64::new(0.0, 0.0);
    for j in 0..n {
        if oracle.is_marked(j) {
            st += v[j];
        } else {
            sn += v[j];
        }
    }
    let at = st / cr((k as f64).sqrt());
    let an = sn / cr(((n - k) as f64).sqrt());
    let mut leak = 0.0;
    for j in 0..n {
        let proj = if oracle.is_marked(j) { at / cr((k as f64).sqrt()) } else { an / cr(((n - k) as f64).sqrt()) };
        leak += (v[j] - proj).norm_sqr();
    }
    ([at.re, an.re], leak.sqrt())
}

/// U^m|s⟩ with U = C_G R_𝒦, one oracle query per step.
pub fn grover_run(n: usize, marked: &[usize], steps: Steps) -> Result<GroverRun> {
    let mut oracle = Oracle::new(n, marked)?;
    let k = oracle.k();
    if k == 0 || k == n {
        return invalid("marked set must be nonempty and proper");
    }
    let m = match steps {
        Steps::Fixed(m) => m,
        Steps::Auto => grover_auto_steps(n, k),
    };
    let mut v = uniform_vector(n);
    let mut traj = TwoDimTrajectory { theta: grover_theta(n, k), components: vec![], leakage: vec![] };
    let (c0, l0) = components(&v, &oracle);
    traj.components.push(c0);
    traj.leakage.push(l0);
    for _ in 0..m {
        oracle.apply(&mut v);
        apply_diffusion(&mut v);
        let (cm, lm) = components(&v, &oracle);
        traj.components.push(cm);
        traj.leakage.push(lm);
    }
    let success = oracle.marked_mass(&v);
    Ok(GroverRun { steps: m, state: QuantumState::normalized(v)?, success, queries: oracle.queries(), trajectory: traj })
}
