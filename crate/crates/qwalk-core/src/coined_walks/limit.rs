use crate::core_math::{eig_unitary, tvd, ComplexVector, Distribution, QuantumState, UnitaryEigen, C64};
use crate::error::{invalid, Result, WalkError};

use super::walk::CoinedWalk;

/// Phase tolerance for treating two eigenvalues of U as equal.
pub const DEGENERACY_TOL: f64 = 1e-8;

fn projected_distribution(w: &CoinedWalk, eig: &UnitaryEigen, psi0: &QuantumState) -> Vec<f64> {
    let a: Vec<C64> = (0..eig.values.len()).map(|j| eig.vectors.column(j).dotc(psi0.amplitudes())).collect();
    let mut pi = vec![0.0; w.n()];
    for group in eig.degenerate_groups(DEGENERACY_TOL) {
        let mut v = ComplexVector::zeros(w.dim());
        for &j in &group {
            v += eig.vectors.column(j) * a[j];
        }
        for (x, p) in w.position_distribution_vec(&v).into_iter().enumerate() {
            pi[x] += p;
        }
    }
    pi
}

/// π(x) = Σ_{λi=λj} Σ_c a_i a_j* ⟨x,c|φ_i⟩⟨φ_j|x,c⟩, i.e. the sum of |P_λ ψ0|² over eigenspaces.
pub fn quantum_limit_dist(w: &CoinedWalk, psi0: &QuantumState) -> Result<Distribution> {
    w.check(psi0)?;
    let eig = eig_unitary(&w.matrix())?;
    Distribution::from_weights(w.labels().to_vec(), projected_distribution(w, &eig, psi0))
}

/// p̄^T(x) = (1/T) Σ_{t=0}^{T−1} p^t(x)
pub fn time_averaged(w: &CoinedWalk, psi0: &QuantumState, t: usize) -> Result<Distribution> {
    w.check(psi0)?;
    if t == 0 {
        return invalid("T must be positive");
    }
    let mut acc = vec![0.0; w.n()];
    let mut v = psi0.amplitudes().clone();
    for _ in 0..t {
        for (a, p) in acc.iter_mut().zip(w.position_distribution_vec(&v)) {
            *a += p;
        }
        v = w.step_vec(&v);
    }
    Distribution::from_weights(w.labels().to_vec(), acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumMixingReport {
    pub time: usize,
    /// tvd(p̄^T, π) at the reported time
    pub tvd: f64,
    /// 2 Σ_{λi≠λj} |a_i|² / (T |λi − λj|) at the reported time
    pub bound: f64,
}

/// Smallest T with tvd(p̄^t, π) ≤ ε for every t in [T, T_max].
pub fn quantum_mixing_time(w: &CoinedWalk, psi0: &QuantumState, eps: f64, t_max: usize) -> Result<QuantumMixingReport> {
    w.check(psi0)?;
    if !(eps > 0.0) {
        return invalid("epsilon must be positive");
    }
    let eig = eig_unitary(&w.matrix())?;
    let pi = Distribution::from_weights(w.labels().to_vec(), projected_distribution(w, &eig, psi0))?;
    let a2: Vec<f64> = (0..eig.values.len())
        .map(|j| eig.vectors.column(j).dotc(psi0.amplitudes()).norm_sqr())
        .collect();
    let mut spread = 0.0;
    for i in 0..a2.len() {
        for j in 0..a2.len() {
            let gap = (eig.values[i] - eig.values[j]).norm();
            if i != j && gap > DEGENERACY_TOL {
                spread += a2[i] / gap;
            }
        }
    }
    let bound = |t: usize| if t == 0 { f64::INFINITY } else { 2.0 * spread / t as f64 };
    if eps >= 2.0 {
        return Ok(QuantumMixingReport { time: 0, tvd: 0.0, bound: bound(0) });
    }

    let mut acc = vec![0.0; w.n()];
    let mut v = psi0.amplitudes().clone();
    let mut last_bad = 0usize;
    let mut dists = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        for (a, p) in acc.iter_mut().zip(w.position_distribution_vec(&v)) {
            *a += p;
        }
        v = w.step_vec(&v);
        let avg = Distribution::from_weights(w.labels().to_vec(), acc.clone())?;
        let d = tvd(&avg, &pi)?;
        if d > eps {
            last_bad = t;
        }
        dists.push(d);
    }
    if last_bad == t_max {
        return Err(WalkError::NoConvergence(format!("tvd above {eps} at T_max = {t_max}")));
    }
    let time = last_bad + 1;
    Ok(QuantumMixingReport { time, tvd: dists[time - 1], bound: bound(time) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HittingAnalysis {
    /// index T: Σ_c |⟨j,c|U^T ψ0⟩|²
    pub one_shot: Vec<f64>,
    /// index m: probability of the first detection at step m
    pub first_hit: Vec<f64>,
    pub p: f64,
    pub concurrent: Option<usize>,
}

impl HittingAnalysis {
    /// min{T : Σ_{m≤T} p^m(j) ≥ p}
    pub fn concurrent_time(&self) -> Result<usize> {
        self.concurrent.ok_or(WalkError::Unreachable(self.first_hit.len().saturating_sub(1)))
    }

    pub fn total_hit(&self) -> f64 {
        self.first_hit.iter().sum()
    }
}

fn mass_at(w: &CoinedWalk, v: &ComplexVector, x: usize) -> f64 {
    (0..w.d()).map(|c| v[w.index(x, c)].norm_sqr()).sum()
}

/// One-shot and monitored hitting of vertex `target`. The monitored process applies
/// Π_1 U · Π_1 after each step; step 0 measures ψ0 itself.
pub fn hitting_analysis(w: &CoinedWalk, psi0: &QuantumState, target: usize, m_max: usize, p: f64) -> Result<HittingAnalysis> {
    w.check(psi0)?;
    if target >= w.n() {
        return invalid("target vertex out of range");
    }
    if !(0.0..=1.0).contains(&p) {
        return invalid("p must lie in [0, 1]");
    }
    let mut one_shot = Vec::with_capacity(m_max + 1);
    let mut v = psi0.amplitudes().clone();
    for t in 0..=m_max {
        if t > 0 {
            v = w.step_vec(&v);
        }
        one_shot.push(mass_at(w, &v, target));
    }

    let mut first_hit = Vec::with_capacity(m_max + 1);
    let mut u = psi0.amplitudes().clone();
    for t in 0..=m_max {
        if t > 0 {
            u = w.step_vec(&u);
        }
        first_hit.push(mass_at(w, &u, target));
        for c in 0..w.d() {
            u[w.index(target, c)] = C64::new(0.0, 0.0);
        }
    }
    let mut cum = 0.0;
    let concurrent = first_hit.iter().position(|&h| {
        cum += h;
        cum >= p
    });
    Ok(HittingAnalysis { one_shot, first_hit, p, concurrent })
}
