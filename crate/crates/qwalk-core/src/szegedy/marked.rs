use std::collections::VecDeque;

use nalgebra::DMatrix;

use crate::core_math::{cr, eig_hermitian, eig_unitary, from_real, max_abs, ComplexMatrix, ComplexVector};
use crate::error::{invalid, Result, WalkError};

use super::walk::check_row_stochastic;

#[derive(Debug, Clone)]
pub struct MarkedModification {
    /// absorbing chain: marked rows replaced by e_x
    pub p_prime: DMatrix<f64>,
    pub unmarked: Vec<usize>,
    /// P restricted to unmarked rows and columns
    pub p_m: DMatrix<f64>,
    /// leading singular value of P_M (0 when every vertex is marked)
    pub norm: f64,
    /// 1 − (second-largest eigenvalue modulus of P)
    pub delta: f64,
    /// second-largest eigenvalue of P, signed
    pub lambda2: f64,
    /// |M|/N
    pub eps: f64,
    /// 1 − δε
    pub bound: f64,
    /// √(1 − 2δε), NaN when 2δε > 1
    pub sqrt_bound: f64,
}

impl MarkedModification {
    pub fn bound_holds(&self) -> bool {
        self.norm <= self.bound + 1e-12
    }
}

fn marked_flags(n: usize, marked: &[usize]) -> Result<Vec<bool>> {
    let mut f = vec![false; n];
    for &m in marked {
        if m >= n {
            return invalid(format!("marked vertex {m} outside 0..{n}"));
        }
        f[m] = true;
    }
    Ok(f)
}

fn check_symmetric(p: &DMatrix<f64>) -> Result<()> {
    check_row_stochastic(p)?;
    if (p - p.transpose()).abs().max() > 1e-12 {
        return invalid("chain must be symmetric");
    }
    Ok(())
}

/// P′ with marked vertices absorbing, and the bound ‖P_M‖ ≤ 1 − δε.
pub fn marked_modify(p: &DMatrix<f64>, marked: &[usize]) -> Result<MarkedModification> {
    check_symmetric(p)?;
    let n = p.nrows();
    let is_m = marked_flags(n, marked)?;
    let k = is_m.iter().filter(|&&b| b).count();
    if k > 0 && k < n {
        // every unmarked vertex must reach M, otherwise P_M keeps an eigenvalue 1
        let mut seen = is_m.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| is_m[x]).collect();
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if !seen[y] && p[(y, x)] > 0.0 {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if let Some(x) = seen.iter().position(|&s| !s) {
            return Err(WalkError::Degenerate(format!("unmarked vertex {x} lies in a component without marked vertices")));
        }
    }
    let mut p_prime = p.clone();
    for x in (0..n).filter(|&x| is_m[x]) {
        for y in 0..n {
            p_prime[(x, y)] = if x == y { 1.0 } else { 0.0 };
        }
    }
    let unmarked: Vec<usize> = (0..n).filter(|&x| !is_m[x]).collect();
    let u = unmarked.len();
    let p_m = DMatrix::from_fn(u, u, |i, j| p[(unmarked[i], unmarked[j])]);
    let norm = if u == 0 { 0.0 } else { p_m.clone().svd(false, false).singular_values.max() };
    let spec = eig_hermitian(&from_real(p))?.values;
    let lambda2 = if n >= 2 { spec[n - 2] } else { spec[0] };
    // the norm chain bounds λ² by (1 − δ)², so δ is measured against the modulus
    let slem = if n >= 2 { lambda2.abs().max(spec[0].abs()) } else { 0.0 };
    let delta = 1.0 - slem;
    let eps = k as f64 / n as f64;
    Ok(MarkedModification {
        p_prime,
        unmarked,
        p_m,
        norm,
        delta,
        lambda2,
        eps,
        bound: 1.0 - delta * eps,
        sqrt_bound: (1.0 - 2.0 * delta * eps).sqrt(),
    })
}

/// p⁺_t for t = 0..=t_max: mass on M after t steps of P′ from the uniform distribution on unmarked vertices.
pub fn classical_hit_probability(m: &MarkedModification, t_max: usize) -> Vec<f64> {
    let n = m.p_prime.nrows();
    let u = m.unmarked.len();
    let mut dist = vec![0.0; n];
    if u == 0 {
        return vec![1.0; t_max + 1];
    }
    for &x in &m.unmarked {
        dist[x] = 1.0 / u as f64;
    }
    let mut out = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        let unmarked_mass: f64 = m.unmarked.iter().map(|&x| dist[x]).sum();
        out.push(1.0 - unmarked_mass);
        if t < t_max {
            let mut next = vec![0.0; n];
            for x in 0..n {
                if dist[x] != 0.0 {
                    for y in 0..n {
                        next[y] += dist[x] * m.p_prime[(x, y)];
                    }
                }
            }
            dist = next;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGap {
    /// smallest eigenphase magnitude of W(P′) on the busy subspace of T|o⟩
    pub phi0: f64,
    /// 2√(δε)
    pub bound: f64,
    pub delta: f64,
    pub eps: f64,
    /// dimension of the eigenspaces that overlap T|o⟩
    pub busy_dim: usize,
    /// ‖WQ − QW_K‖ for the orthonormal basis Q of span{T, ST}
    pub invariance_defect: f64,
}

impl PhaseGap {
    pub fn bound_holds(&self) -> bool {
        self.phi0 >= self.bound - 1e-12
    }
}

pub const BUSY_TOL: f64 = 1e-10;

/// W = S R₁ S R₁ restricted to the invariant span of the columns of T and ST.
#[derive(Debug, Clone)]
pub struct IsometrySpanWalk {
    /// orthonormal columns spanning range(T) + range(ST)
    pub basis: ComplexMatrix,
    pub restricted: ComplexMatrix,
    pub invariance_defect: f64,
    pub isometry: ComplexMatrix,
}

fn swap_rows(x: &ComplexMatrix, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(x.nrows(), x.ncols(), |r, c| x[((r % n) * n + r / n, c)])
}

/// W applied to the columns of X without forming the N² × N² operator.
fn apply_walk(t: &ComplexMatrix, x: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let r1 = |y: &ComplexMatrix| t * (t.adjoint() * y) * cr(2.0) - y;
    let r1x = r1(x);
    swap_rows(&r1(&swap_rows(&r1x, n)), n)
}

pub fn isometry_span_walk(p: &DMatrix<f64>) -> Result<IsometrySpanWalk> {
    check_row_stochastic(p)?;
    let n = p.nrows();
    let mut t = ComplexMatrix::zeros(n * n, n);
    for x in 0..n {
        for y in 0..n {
            t[(x * n + y, x)] = cr(p[(x, y)].sqrt());
        }
    }
    let st = swap_rows(&t, n);
    let mut b = ComplexMatrix::zeros(n * n, 2 * n);
    b.columns_mut(0, n).copy_from(&t);
    b.columns_mut(n, n).copy_from(&st);
    // orthonormalize through the Gram matrix, dropping its null directions
    let gram = eig_hermitian(&(b.adjoint() * &b))?;
    let keep: Vec<usize> = (0..2 * n).filter(|&i| gram.values[i] > 1e-10).collect();
    let mut basis = ComplexMatrix::zeros(n * n, keep.len());
    for (k, &i) in keep.iter().enumerate() {
        let v = &b * gram.vectors.column(i) / cr(gram.values[i].sqrt());
        basis.set_column(k, &v);
    }
    let wq = apply_walk(&t, &basis, n);
    let restricted = basis.adjoint() * &wq;
    let invariance_defect = max_abs(&(wq - &basis * &restricted));
    Ok(IsometrySpanWalk { basis, restricted, invariance_defect, isometry: t })
}

/// φ₀ from the exact eigendecomposition of the walk of P′. Eigenvectors outside the invariant
/// span of T and ST are orthogonal to T|o⟩, so the restriction sees the whole busy subspace.
pub fn marked_phase_gap(p: &DMatrix<f64>, marked: &[usize]) -> Result<PhaseGap> {
    let m = marked_modify(p, marked)?;
    let n = p.nrows();
    let u = m.unmarked.len();
    if u == 0 {
        return invalid("no unmarked vertex to start from");
    }
    let span = isometry_span_walk(&m.p_prime)?;
    let mut o = ComplexVector::zeros(n);
    for &x in &m.unmarked {
        o[x] = cr(1.0 / (u as f64).sqrt());
    }
    let to = span.basis.adjoint() * (&span.isometry * o);
    let ev = eig_unitary(&span.restricted)?;
    let mut phi0 = f64::INFINITY;
    let mut busy_dim = 0;
    for g in ev.degenerate_groups(1e-8) {
        let overlap: f64 = g.iter().map(|&i| ev.vectors.column(i).dotc(&to).norm_sqr()).sum::<f64>().sqrt();
        if overlap > BUSY_TOL {
            busy_dim += g.len();
            for &i in &g {
                phi0 = phi0.min(ev.phases[i].abs());
            }
        }
    }
    Ok(PhaseGap {
        phi0,
        bound: 2.0 * (m.delta * m.eps).sqrt(),
        delta: m.delta,
        eps: m.eps,
        busy_dim,
        invariance_defect: span.invariance_defect,
    })
}

/// Row-stochastic walk on the complete graph without loops: P = (J − I)/(N − 1).
pub fn complete_graph_chain(n: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return invalid("complete graph chain needs at least two vertices");
    }
    Ok(DMatrix::from_fn(n, n, |x, y| if x == y { 0.0 } else { 1.0 / (n - 1) as f64 }))
}
