use nalgebra::DMatrix;
use rand::Rng;

use crate::classical_walks::MarkovChain;
use crate::core_math::{cr, eig_hermitian, from_real, max_abs, ComplexMatrix, ComplexVector, EigenDecomposition};
use crate::error::{Result, WalkError};

/// Szegedy walk of a row-stochastic P (P_{x,y} = Pr(x → y)) on C^N ⊗ C^N, basis index x·N + y.
#[derive(Debug, Clone)]
pub struct TwoRegisterWalk {
    p: DMatrix<f64>,
    t: ComplexMatrix,
    swap: ComplexMatrix,
    r1: ComplexMatrix,
    r2: ComplexMatrix,
    w: ComplexMatrix,
}

/// D_{x,y} = √(P_{x,y}P_{y,x}) with its spectrum.
#[derive(Debug, Clone)]
pub struct Discriminant {
    pub d: DMatrix<f64>,
    pub eigen: EigenDecomposition,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryDefects {
    /// ‖T†T − I‖
    pub tt_identity: f64,
    /// ‖TT† − Π₁‖
    pub projector: f64,
    /// ‖T†ST − D‖
    pub swap_discriminant: f64,
}

pub fn check_row_stochastic(p: &DMatrix<f64>) -> Result<()> {
    if p.nrows() != p.ncols() || p.nrows() == 0 {
        return Err(WalkError::DimensionMismatch { expected: p.nrows(), got: p.ncols() });
    }
    for x in 0..p.nrows() {
        let row = p.row(x);
        if row.iter().any(|&v| !(v >= 0.0) || v > 1.0 + 1e-12) {
            return Err(WalkError::NotStochastic(format!("row {x} has an entry outside [0, 1]")));
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > 1e-10 {
            return Err(WalkError::NotStochastic(format!("row {x} sums to {s}")));
        }
    }
    Ok(())
}

pub fn swap_matrix(n: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(n * n, n * n);
    for x in 0..n {
        for y in 0..n {
            s[(y * n + x, x * n + y)] = cr(1.0);
        }
    }
    s
}

pub fn discriminant(p: &DMatrix<f64>) -> Result<Discriminant> {
    check_row_stochastic(p)?;
    let n = p.nrows();
    let d = DMatrix::from_fn(n, n, |x, y| (p[(x, y)] * p[(y, x)]).sqrt());
    let eigen = eig_hermitian(&from_real(&d))?;
    Ok(Discriminant { d, eigen })
}

impl TwoRegisterWalk {
    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    pub fn dim(&self) -> usize {
        self.n() * self.n()
    }

    pub fn p(&self) -> &DMatrix<f64> {
        &self.p
    }

    /// T = Σ_x |φ_x⟩⟨x|.
    pub fn isometry(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn swap(&self) -> &ComplexMatrix {
        &self.swap
    }

    pub fn r1(&self) -> &ComplexMatrix {
        &self.r1
    }

    pub fn r2(&self) -> &ComplexMatrix {
        &self.r2
    }

    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    /// |φ_x⟩ = |x⟩ ⊗ Σ_y √P_{x,y}|y⟩.
    pub fn phi(&self, x: usize) -> ComplexVector {
        self.t.column(x).into_owned()
    }

    /// |ψ_y⟩ = S|φ_y⟩ = Σ_x √P_{y,x}|x⟩ ⊗ |y⟩.
    pub fn psi(&self, y: usize) -> ComplexVector {
        &self.swap * self.phi(y)
    }

    /// (1/√N) Σ_x |φ_x⟩.
    pub fn uniform_phi_state(&self) -> ComplexVector {
        let n = self.n();
        let o = ComplexVector::from_element(n, cr(1.0 / (n as f64).sqrt()));
        &self.t * o
    }

    /// p(x) = ⟨ψ|(|x⟩⟨x| ⊗ I)|ψ⟩.
    pub fn position_distribution(&self, state: &ComplexVector) -> Result<Vec<f64>> {
        let n = self.n();
        if state.len() != n * n {
            return Err(WalkError::DimensionMismatch { expected: n * n, got: state.len() });
        }
        Ok((0..n).map(|x| (0..n).map(|y| state[x * n + y].norm_sqr()).sum()).collect())
    }

    pub fn discriminant(&self) -> Result<Discriminant> {
        discriminant(&self.p)
    }

    pub fn isometry_defects(&self) -> Result<IsometryDefects> {
        let n = self.n();
        let td = self.t.adjoint();
        let pi1 = (&self.r1 + ComplexMatrix::identity(n * n, n * n)) * cr(0.5);
        let d = from_real(&self.discriminant()?.d);
        Ok(IsometryDefects {
            tt_identity: max_abs(&(&td * &self.t - ComplexMatrix::identity(n, n))),
            projector: max_abs(&(&self.t * &td - pi1)),
            swap_discriminant: max_abs(&(&td * &self.swap * &self.t - d)),
        })
    }

    /// max ‖R₁² − I‖, ‖R₂² − I‖, ‖W†W − I‖.
    pub fn reflection_defects(&self) -> (f64, f64, f64) {
        let id = ComplexMatrix::identity(self.dim(), self.dim());
        (
            max_abs(&(&self.r1 * &self.r1 - &id)),
            max_abs(&(&self.r2 * &self.r2 - &id)),
            max_abs(&(self.w.adjoint() * &self.w - &id)),
        )
    }

    /// Worst violation of R₁ST|λ⟩ = 2λT|λ⟩ − ST|λ⟩ and of W-closure of span{T|λ⟩, ST|λ⟩}.
    pub fn invariant_subspace_defect(&self) -> Result<f64> {
        let disc = self.discriminant()?;
        let mut worst: f64 = 0.0;
        for (j, &lam) in disc.eigen.values.iter().enumerate() {
            let v = &self.t * disc.eigen.vectors.column(j);
            let sv = &self.swap * &v;
            let lhs = &self.r1 * &sv;
            worst = worst.max((lhs - (&v * cr(2.0 * lam) - &sv)).norm());
            // orthonormal basis of the span, one vector when λ = ±1
            let e1 = &v / cr(v.norm());
            let mut e2 = &sv - &e1 * e1.dotc(&sv);
            let span2 = e2.norm() > 1e-9;
            if span2 {
                e2 /= cr(e2.norm());
            }
            for x in [&v, &sv] {
                let wx = &self.w * x;
                let mut r = &wx - &e1 * e1.dotc(&wx);
                if span2 {
                    r -= &e2 * e2.dotc(&r);
                }
                worst = worst.max(r.norm());
            }
        }
        Ok(worst)
    }
}

/// W = S R₁ S R₁ = R₂ R₁ with R₁ = 2Σ_x|φ_x⟩⟨φ_x| − I.
pub fn szegedy_build(p: &DMatrix<f64>) -> Result<TwoRegisterWalk> {
    check_row_stochastic(p)?;
    let n = p.nrows();
    let mut t = ComplexMatrix::zeros(n * n, n);
    for x in 0..n {
        for y in 0..n {
            t[(x * n + y, x)] = cr(p[(x, y)].sqrt());
        }
    }
    let id = ComplexMatrix::identity(n * n, n * n);
    let r1 = &t * t.adjoint() * cr(2.0) - &id;
    let swap = swap_matrix(n);
    let r2 = &swap * &r1 * &swap;
    let w = &r2 * &r1;
    Ok(TwoRegisterWalk { p: p.clone(), t, swap, r1, r2, w })
}

/// The classical module stores column-stochastic matrices; transpose into the row convention.
pub fn szegedy_from_chain(chain: &MarkovChain) -> Result<TwoRegisterWalk> {
    szegedy_build(&chain.matrix().transpose())
}

/// Symmetric stochastic matrix: random symmetric weights on `density` of the pairs, padded on the diagonal.
pub fn random_symmetric_chain<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    for x in 0..n {
        for y in x..n {
            if rng.gen::<f64>() < density {
                let w = rng.gen::<f64>();
                a[(x, y)] = w;
                a[(y, x)] = w;
            }
        }
    }
    let c = (0..n).map(|x| a.row(x).sum()).fold(0.0f64, f64::max).max(1e-300);
    let mut p = a / c;
    for x in 0..n {
        let s: f64 = p.row(x).sum();
        p[(x, x)] = (p[(x, x)] + 1.0 - s).max(0.0);
    }
    p
}

/// max |P_{x,y}π(x) − P_{y,x}π(y)|.
pub fn detailed_balance_defect(p: &DMatrix<f64>, pi: &[f64]) -> f64 {
    let n = p.nrows();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            worst = worst.max((p[(x, y)] * pi[x] - p[(y, x)] * pi[y]).abs());
        }
    }
    worst
}
