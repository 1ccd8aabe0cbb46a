use std::f64::consts::FRAC_PI_2;

use crate::core_math::{ComplexVector, C64};
use crate::error::{invalid, Result};
use crate::graphs::Graph;

use super::hamiltonian::{CtqwPropagator, Hamiltonian};

fn check_search(n: usize, marked: &[usize]) -> Result<()> {
    if n < 2 {
        return invalid("analog search needs N >= 2");
    }
    if marked.is_empty() || marked.len() >= n {
        return invalid(format!("need 1 <= M < N marked items, got M = {}", marked.len()));
    }
    Ok(())
}

/// Marked-set probability sin²(δt) + (M/N)cos²(δt), δ = √(M/N), from the uniform start.
pub fn analog_success_closed_form(n: usize, m: usize, t: f64) -> f64 {
    let f = m as f64 / n as f64;
    let d = f.sqrt();
    (d * t).sin().powi(2) + f * (d * t).cos().powi(2)
}

/// T = π/(2δ)
pub fn analog_optimal_time(n: usize, m: usize) -> f64 {
    FRAC_PI_2 * (n as f64 / m as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalogPoint {
    pub t: f64,
    /// Σ_{w∈W}|⟨w|ψ(t)⟩|² by dense evolution
    pub simulated: f64,
    pub closed_form: f64,
    /// weight outside span{|w̄⟩, |r̄⟩}
    pub leakage: f64,
}

/// Dense evolution under −|s⟩⟨s| − Σ_{w∈W}|w⟩⟨w| from |s⟩, at every requested time.
pub fn analog_search(n: usize, marked: &[usize], times: &[f64]) -> Result<Vec<AnalogPoint>> {
    check_search(n, marked)?;
    let h = Hamiltonian::grover(n, marked)?;
    let p = CtqwPropagator::new(&h);
    let mut is_marked = vec![false; n];
    for &w in marked {
        is_marked[w] = true;
    }
    let m = marked.len();
    let s = ComplexVector::from_element(n, C64::new(1.0 / (n as f64).sqrt(), 0.0));
    times
        .iter()
        .map(|&t| {
            if !t.is_finite() {
                return invalid("time must be finite");
            }
            let psi = p.evolve(t, &s)?;
            let (mut sum_w, mut sum_r) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
            let mut simulated = 0.0;
            for (i, z) in psi.iter().enumerate() {
                if is_marked[i] {
                    sum_w += z;
                    simulated += z.norm_sqr();
                } else {
                    sum_r += z;
                }
            }
            let inside = sum_w.norm_sqr() / m as f64 + sum_r.norm_sqr() / (n - m) as f64;
            Ok(AnalogPoint {
                t,
                simulated,
                closed_form: analog_success_closed_form(n, m, t),
                leakage: (psi.norm_squared() - inside).abs(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPoint {
    pub gamma: f64,
    pub best_probability: f64,
    pub best_time: f64,
}

/// For each γ: the largest marked-set probability under −γA − Σ|w⟩⟨w| on t = 0, dt, …, t_max,
/// starting from the uniform superposition over vertices.
pub fn search_gamma_sweep(
    g: &Graph,
    marked: &[usize],
    gammas: &[f64],
    t_max: f64,
    dt: f64,
) -> Result<Vec<GammaPoint>> {
    check_search(g.n(), marked)?;
    if !(dt > 0.0 && t_max >= 0.0) {
        return invalid("need dt > 0 and t_max >= 0");
    }
    let n = g.n();
    let s = ComplexVector::from_element(n, C64::new(1.0 / (n as f64).sqrt(), 0.0));
    let steps = (t_max / dt).floor() as usize;
    gammas
        .iter()
        .map(|&gamma| {
            let p = CtqwPropagator::new(&Hamiltonian::search(g, gamma, marked)?);
            let mut best = GammaPoint { gamma, best_probability: -1.0, best_time: 0.0 };
            for i in 0..=steps {
                let t = i as f64 * dt;
                let psi = p.evolve(t, &s)?;
                let pr: f64 = marked.iter().map(|&w| psi[w].norm_sqr()).sum();
                if pr > best.best_probability {
                    best.best_probability = pr;
                    best.best_time = t;
                }
            }
            Ok(best)
        })
        .collect()
}
