use std::f64::consts::PI;

use crate::core_math::{cr, eig_unitary, ComplexMatrix, ComplexVector, UnitaryEigen, C64};
use crate::error::{invalid, Result, WalkError};

/// Tolerance for grouping eigenphases and for checking conjugate partners.
pub const PAIR_TOL: f64 = 1e-8;

/// Conjugate eigenpair e^{±iθ} of V; |φ⁻⟩ = |φ⁺⟩* and a = ⟨φ^±|t⟩ is real.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    pub theta: f64,
    pub a: f64,
    pub plus: ComplexVector,
}

impl SpectralPair {
    pub fn minus(&self) -> ComplexVector {
        self.plus.map(|z| z.conj())
    }
}

#[derive(Debug, Clone)]
pub struct AbstractSearchAnalysis {
    /// real +1 eigenvector of V, sign chosen so that a ≥ 0
    pub psi_init: ComplexVector,
    pub a: f64,
    pub pairs: Vec<SpectralPair>,
    /// √Σ a_k² over the −1 eigenspace
    pub big_a: f64,
    /// smallest positive eigenphase of V (π when V has no complex pair)
    pub theta_min: f64,
    /// ‖|t⟩ − (a|ψ⟩ + Σ a_j(|φ⁺⟩+|φ⁻⟩) + Σ a_k|ρ_k⟩)‖
    pub expansion_residual: f64,
    pub alpha: f64,
    pub alpha_plus: ComplexVector,
    pub alpha_minus: ComplexVector,
    pub init_overlap: f64,
    pub target_overlap: f64,
    /// ⌊π/(2α)⌋
    pub steps: usize,
    /// |⟨α⁺|U^steps|ψ⟩|
    pub final_overlap: f64,
    /// |⟨t|U^steps|ψ⟩|²
    pub final_success: f64,
}

fn project(eig: &UnitaryEigen, group: &[usize], t: usize) -> ComplexVector {
    let n = eig.vectors.nrows();
    let mut p = ComplexVector::zeros(n);
    for &i in group {
        let col = eig.vectors.column(i);
        // ⟨v_i|t⟩ = conj(v_i[t])
        p += col * col[t].conj();
    }
    p
}

fn group_phase(eig: &UnitaryEigen, group: &[usize]) -> f64 {
    // mean on the circle, so a group straddling ±π reads as π
    let z: C64 = group.iter().map(|&i| eig.values[i]).sum();
    z.arg()
}

fn is_eigvec(u: &ComplexMatrix, v: &ComplexVector, phase: f64) -> bool {
    (u * v - v * C64::from_polar(1.0, phase)).norm() <= PAIR_TOL
}

/// Spectral analysis of U = V R_t for a real unitary V with a simple +1 eigenvalue.
pub fn abstract_search_analyze(v: &ComplexMatrix, t: usize) -> Result<AbstractSearchAnalysis> {
    let n = v.nrows();
    if t >= n {
        return invalid(format!("target {t} outside 0..{n}"));
    }
    if v.iter().any(|z| z.im.abs() > 1e-12) {
        return invalid("V must be real");
    }
    let ev = eig_unitary(v)?;
    let mut psi: Option<ComplexVector> = None;
    let mut pairs = vec![];
    let mut residual = ComplexVector::zeros(n);
    residual[t] = cr(1.0);
    let mut big_a2 = 0.0;
    for g in ev.degenerate_groups(PAIR_TOL) {
        let ph = group_phase(&ev, &g);
        if ph.abs() <= PAIR_TOL {
            if g.len() != 1 || psi.is_some() {
                return Err(WalkError::Degenerate("+1 eigenspace of V is not one-dimensional".into()));
            }
            let mut x = ev.vectors.column(g[0]).into_owned();
            let big = x.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
            x *= big.conj() / cr(big.norm());
            if x[t].re < 0.0 {
                x = -x;
            }
            residual -= &x * x[t];
            psi = Some(x);
        } else if PI - ph.abs() <= PAIR_TOL {
            let p = project(&ev, &g, t);
            big_a2 += p.norm_squared();
            residual -= p;
        } else {
            let p = project(&ev, &g, t);
            residual -= &p;
            if ph < 0.0 {
                continue;
            }
            let aj = p.norm();
            if aj <= 1e-12 {
                pairs.push(SpectralPair { theta: ph, a: 0.0, plus: ComplexVector::zeros(n) });
                continue;
            }
            // |φ⁺⟩ = P_θ|t⟩/‖P_θ|t⟩‖ carries all of the overlap, so a_j = ‖P_θ|t⟩‖ is real
            let plus = p / cr(aj);
            if !is_eigvec(v, &plus.map(|z| z.conj()), -ph) {
                return Err(WalkError::Degenerate(format!("eigenphase {ph} has no conjugate partner")));
            }
            pairs.push(SpectralPair { theta: ph, a: aj, plus });
        }
    }
    let psi = psi.ok_or_else(|| WalkError::Degenerate("V has no +1 eigenvector".into()))?;
    pairs.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    let theta_min = pairs.first().map_or(PI, |p| p.theta);
    let a = psi[t].re;

    let mut u = v.clone();
    for i in 0..n {
        u[(i, t)] = -u[(i, t)];
    }
    let eu = eig_unitary(&u)?;
    let mut best: Option<(f64, ComplexVector)> = None;
    for g in eu.degenerate_groups(PAIR_TOL) {
        let ph = group_phase(&eu, &g);
        if ph <= 1e-10 || PI - ph <= PAIR_TOL {
            continue;
        }
        let p = project(&eu, &g, t);
        if p.norm() <= 1e-10 {
            continue;
        }
        if best.as_ref().map_or(true, |(b, _)| ph < *b) {
            best = Some((ph, p));
        }
    }
    let (alpha, p) = best.ok_or_else(|| WalkError::Degenerate("no eigenphase of U overlaps the target".into()))?;
    let ket = &p / cr(p.norm());
    let conj = ket.map(|z| z.conj());
    if !is_eigvec(&u, &conj, -alpha) {
        return Err(WalkError::Degenerate("eigenphase α has no conjugate partner".into()));
    }
    let s2 = cr(std::f64::consts::SQRT_2);
    let alpha_plus = (&ket + &conj) / s2;
    let alpha_minus = (&ket - &conj) / s2;
    let init_overlap = psi.dotc(&alpha_minus).norm();
    let target_overlap = alpha_plus[t].norm();
    let steps = (PI / (2.0 * alpha)).floor() as usize;
    let mut x = psi.clone();
    for _ in 0..steps {
        x = &u * x;
    }
    Ok(AbstractSearchAnalysis {
        a,
        pairs,
        big_a: big_a2.sqrt(),
        theta_min,
        expansion_residual: residual.norm(),
        alpha,
        init_overlap,
        target_overlap,
        steps,
        final_overlap: alpha_plus.dotc(&x).norm(),
        final_success: x[t].norm_sqr(),
        psi_init: psi,
        alpha_plus,
        alpha_minus,
    })
}
