use crate::core_math::{cr, eig_hermitian, hermitian_defect, ComplexMatrix, Distribution, QuantumState, NORM_TOL};
use crate::error::{invalid, Result, WalkError};

use super::walk::CoinedWalk;

/// Density matrix on position ⊗ coin.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    rho: ComplexMatrix,
}

impl DensityState {
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if rho.nrows() != rho.ncols() {
            return invalid("density matrix must be square");
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(WalkError::InvalidState(format!("trace {tr}")));
        }
        let h = hermitian_defect(&rho);
        if h > NORM_TOL {
            return Err(WalkError::NotHermitian(h));
        }
        let s = Self { rho };
        let low = s.min_eigenvalue()?;
        if low < -1e-10 {
            return Err(WalkError::InvalidState(format!("negative eigenvalue {low}")));
        }
        Ok(s)
    }

    pub fn pure(psi: &QuantumState) -> Self {
        let v = psi.amplitudes();
        Self { rho: v * v.adjoint() }
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(eig_hermitian(&self.rho)?.values[0])
    }

    /// p(x) = Σ_c ρ_{(x,c),(x,c)}
    pub fn position_distribution(&self, w: &CoinedWalk) -> Result<Distribution> {
        if self.dim() != w.dim() {
            return Err(WalkError::DimensionMismatch { expected: w.dim(), got: self.dim() });
        }
        let p = (0..w.n()).map(|x| (0..w.d()).map(|c| self.rho[(w.index(x, c), w.index(x, c))].re).sum()).collect();
        Distribution::from_weights(w.labels().to_vec(), p)
    }
}

/// Projector family applied with probability 1 − p after each step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measurement {
    Coin,
    Position,
    /// position and coin, i.e. the full computational basis
    Both,
    /// independent random phase on each basis state, uniform in [−s/2, s/2]; s = 2π dephases fully
    EdgePhase { spread: f64 },
}

impl Measurement {
    /// ρ ↦ Σ_k Π_k ρ Π_k (or the phase average) as an elementwise mask
    fn apply(&self, rho: &mut ComplexMatrix, d: usize) {
        let n = rho.nrows();
        let damp = match *self {
            Measurement::EdgePhase { spread } => {
                let h = spread / 2.0;
                let s = if h == 0.0 { 1.0 } else { h.sin() / h };
                s * s
            }
            _ => 0.0,
        };
        for j in 0..n {
            for i in 0..n {
                if i == j {
                    continue;
                }
                let keep = match self {
                    Measurement::Coin => i % d == j % d,
                    Measurement::Position => i / d == j / d,
                    Measurement::Both => false,
                    Measurement::EdgePhase { .. } => {
                        rho[(i, j)] *= cr(damp);
                        true
                    }
                };
                if !keep {
                    rho[(i, j)] = cr(0.0);
                }
            }
        }
    }
}

/// ℰ(ρ) = p UρU† + (1−p) Σ_k Π_k UρU† Π_k
pub fn decoherence_step(w: &CoinedWalk, p: f64, meas: Measurement, rho: &DensityState) -> DensityState {
    let u = w.conjugate(&rho.rho);
    let mut m = u.clone();
    meas.apply(&mut m, w.d());
    DensityState { rho: u * cr(p) + m * cr(1.0 - p) }
}

fn check_args(w: &CoinedWalk, p: f64, meas: Measurement, rho0: &DensityState) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return invalid("p must lie in [0, 1]");
    }
    if let Measurement::EdgePhase { spread } = meas {
        if !(spread >= 0.0 && spread.is_finite()) {
            return invalid("phase spread must be non-negative");
        }
    }
    if rho0.dim() != w.dim() {
        return Err(WalkError::DimensionMismatch { expected: w.dim(), got: rho0.dim() });
    }
    Ok(())
}

pub fn decohere_evolve(w: &CoinedWalk, p: f64, meas: Measurement, rho0: &DensityState, m: usize) -> Result<DensityState> {
    check_args(w, p, meas, rho0)?;
    let mut rho = rho0.clone();
    for _ in 0..m {
        rho = decoherence_step(w, p, meas, &rho);
    }
    Ok(rho)
}

/// Position distributions after 0..=m steps.
pub fn decohere_series(w: &CoinedWalk, p: f64, meas: Measurement, rho0: &DensityState, m: usize) -> Result<Vec<Distribution>> {
    check_args(w, p, meas, rho0)?;
    let mut rho = rho0.clone();
    let mut out = vec![rho.position_distribution(w)?];
    for _ in 0..m {
        rho = decoherence_step(w, p, meas, &rho);
        out.push(rho.position_distribution(w)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coined_walks::coins::{coin, CoinKind};
    use crate::core_math::{c, max_abs, tvd};

    fn line(m: usize) -> CoinedWalk {
        CoinedWalk::line(coin(CoinKind::Hadamard).unwrap(), m).unwrap()
    }

    fn binomial(w: &CoinedWalk, m: usize) -> Distribution {
        let mut p = vec![0.0; w.n()];
        let mut row = vec![1.0f64];
        for _ in 0..m {
            let mut next = vec![0.0; row.len() + 1];
            for (k, v) in row.iter().enumerate() {
                next[k] += v / 2.0;
                next[k + 1] += v / 2.0;
            }
            row = next;
        }
        for (k, v) in row.iter().enumerate() {
            let x = 2 * k as i64 - m as i64;
            p[w.position_of(x).unwrap()] = *v;
        }
        Distribution::new(w.labels().to_vec(), p).unwrap()
    }

    #[test]
    fn unitary_limit() {
        let w = line(10);
        let psi = w.state_at_label(0, &[cr(0.6), c(0.0, 0.8)]).unwrap();
        let r = decohere_evolve(&w, 1.0, Measurement::Both, &DensityState::pure(&psi), 10).unwrap();
        let v = w.run(&psi, 10).unwrap().into_vector();
        assert!(max_abs(&(r.matrix() - &v * v.adjoint())) < 1e-13);
    }

    #[test]
    fn full_measurement_is_classical() {
        let m = 30;
        let w = line(m);
        let psi = w.state_at_label(0, &[cr(1.0), cr(0.0)]).unwrap();
        let series = decohere_series(&w, 0.0, Measurement::Both, &DensityState::pure(&psi), m).unwrap();
        for (t, d) in series.iter().enumerate() {
            assert!(tvd(d, &binomial(&w, t)).unwrap() <= 1e-10, "t={t}");
        }
        // full-spread phases act like the full measurement
        let e = decohere_evolve(&w, 0.0, Measurement::EdgePhase { spread: 2.0 * std::f64::consts::PI }, &DensityState::pure(&psi), 5).unwrap();
        assert!(tvd(&e.position_distribution(&w).unwrap(), &binomial(&w, 5)).unwrap() < 1e-10);
    }

    #[test]
    fn trace_and_positivity_preserved() {
        let w = line(6);
        let psi = w.state_at_label(0, &[cr(0.6), c(0.0, 0.8)]).unwrap();
        for meas in [Measurement::Coin, Measurement::Position, Measurement::Both, Measurement::EdgePhase { spread: 1.3 }] {
            let r = decohere_evolve(&w, 0.7, meas, &DensityState::pure(&psi), 6).unwrap();
            assert!((r.trace() - 1.0).abs() < 1e-9);
            assert!(hermitian_defect(r.matrix()) < 1e-12);
            assert!(r.min_eigenvalue().unwrap() > -1e-10);
            assert!(DensityState::new(r.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn rejects_bad_input() {
        let w = line(2);
        let rho = DensityState::pure(&w.state_at_label(0, &[cr(1.0), cr(0.0)]).unwrap());
        assert!(decohere_evolve(&w, 1.5, Measurement::Coin, &rho, 1).is_err());
        let mut bad = ComplexMatrix::zeros(2, 2);
        bad[(0, 0)] = cr(2.0);
        bad[(1, 1)] = cr(-1.0);
        assert!(DensityState::new(bad).is_err());
    }

    #[test]
    fn intermediate_rate_maximizes_entropy() {
        let m = 100;
        let w = line(m);
        let psi = w.state_at_label(0, &[cr(1.0), cr(0.0)]).unwrap();
        let rho0 = DensityState::pure(&psi);
        let ent = |p: f64| decohere_evolve(&w, p, Measurement::Both, &rho0, m).unwrap().position_distribution(&w).unwrap().entropy();
        let (e0, e1, e96) = (ent(0.0), ent(1.0), ent(0.96));
        assert!(e96 > e0 && e96 > e1, "{e0} {e96} {e1}");
    }
}
