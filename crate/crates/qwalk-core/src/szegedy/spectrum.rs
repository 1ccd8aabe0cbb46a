use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::core_math::{eig_unitary, C64};
use crate::error::Result;

use super::walk::szegedy_build;

/// Distance between two phases on the circle.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    C64::from_polar(1.0, a - b).arg().abs()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPair {
    pub lambda: f64,
    /// 2 arccos λ
    pub predicted: f64,
    /// matched W eigenphases for +predicted and −predicted
    pub measured: [f64; 2],
    pub error: f64,
    /// |e^{2i arccos λ} − ((2λ²−1) + 2iλ√(1−λ²))|
    pub identity_error: f64,
}

#[derive(Debug, Clone)]
pub struct SpectrumMap {
    pub pairs: Vec<SpectrumPair>,
    /// W eigenphases left after matching, expected at 0 or π
    pub residual_phases: Vec<f64>,
    pub residual_error: f64,
    pub max_pair_error: f64,
}

/// Matches every |λ_j| < 1 eigenvalue of D with W-eigenphases ±2 arccos λ_j (dense eigensolver on W).
pub fn spectrum_map(p: &DMatrix<f64>) -> Result<SpectrumMap> {
    let walk = szegedy_build(p)?;
    let disc = walk.discriminant()?;
    let ew = eig_unitary(walk.w())?;
    let mut used = vec![false; ew.phases.len()];
    let take = |target: f64, used: &mut Vec<bool>| -> f64 {
        let mut best = (usize::MAX, f64::INFINITY);
        for (i, &ph) in ew.phases.iter().enumerate() {
            let d = phase_distance(ph, target);
            if !used[i] && d < best.1 {
                best = (i, d);
            }
        }
        used[best.0] = true;
        ew.phases[best.0]
    };
    let mut pairs = vec![];
    for &lam in &disc.eigen.values {
        if lam.abs() >= 1.0 - 1e-9 {
            continue;
        }
        let th = 2.0 * lam.clamp(-1.0, 1.0).acos();
        let plus = take(th, &mut used);
        let minus = take(-th, &mut used);
        let error = phase_distance(plus, th).max(phase_distance(minus, -th));
        let formula = C64::new(2.0 * lam * lam - 1.0, 2.0 * lam * (1.0 - lam * lam).sqrt());
        pairs.push(SpectrumPair {
            lambda: lam,
            predicted: th,
            measured: [plus, minus],
            error,
            identity_error: (C64::from_polar(1.0, th) - formula).norm(),
        });
    }
    let residual_phases: Vec<f64> =
        ew.phases.iter().zip(&used).filter(|(_, &u)| !u).map(|(&ph, _)| ph).collect();
    let residual_error = residual_phases
        .iter()
        .map(|&ph| phase_distance(ph, 0.0).min(phase_distance(ph, PI)))
        .fold(0.0, f64::max);
    let max_pair_error = pairs.iter().map(|p| p.error).fold(0.0, f64::max);
    Ok(SpectrumMap { pairs, residual_phases, residual_error, max_pair_error })
}

/// "lambda_D,phase_W", one row per matched eigenphase.
pub fn spectrum_csv(map: &SpectrumMap) -> String {
    let mut s = String::from("lambda_D,phase_W\n");
    for p in &map.pairs {
        for ph in p.measured {
            s.push_str(&format!("{:.16e},{:.16e}\n", p.lambda, ph));
        }
    }
    s
}
