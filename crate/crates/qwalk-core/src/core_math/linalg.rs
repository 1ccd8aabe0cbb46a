use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, WalkError};

pub type C64 = Complex64;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

pub const NORM_TOL: f64 = 1e-9;
pub const OP_TOL: f64 = 1e-8;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖A − A†‖_max
pub fn hermitian_defect(a: &ComplexMatrix) -> f64 {
    if a.nrows() != a.ncols() {
        return f64::INFINITY;
    }
    let n = a.nrows();
    let mut d: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            d = d.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    d
}

/// ‖U†U − I‖_max
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let g = u.adjoint() * u;
    let mut d: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            d = d.max((g[(i, j)] - cr(target)).norm());
        }
    }
    d
}

pub fn from_real(a: &DMatrix<f64>) -> ComplexMatrix {
    a.map(cr)
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = s * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Unit-norm amplitude vector over an ordered basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amps: ComplexVector,
}

impl QuantumState {
    /// Rejects vectors whose norm differs from 1 by more than 1e-9.
    pub fn new(amps: ComplexVector) -> Result<Self> {
        let n2 = amps.norm_squared();
        if !n2.is_finite() || (n2 - 1.0).abs() > NORM_TOL {
            return Err(WalkError::InvalidState(format!("squared norm {n2}")));
        }
        Ok(Self { amps })
    }

    pub fn normalized(amps: ComplexVector) -> Result<Self> {
        let n = amps.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(WalkError::InvalidState("zero vector".into()));
        }
        Ok(Self { amps: amps / cr(n) })
    }

    pub fn from_slice(amps: &[C64]) -> Result<Self> {
        Self::new(ComplexVector::from_column_slice(amps))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = ComplexVector::zeros(dim);
        v[i] = cr(1.0);
        Self { amps: v }
    }

    pub fn uniform(dim: usize) -> Self {
        let a = 1.0 / (dim as f64).sqrt();
        Self { amps: ComplexVector::from_element(dim, cr(a)) }
    }

    pub(crate) fn from_raw(amps: ComplexVector) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amps
    }

    pub fn into_vector(self) -> ComplexVector {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &QuantumState) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }
}

/// Real spectrum (ascending) with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::from_diagonal(&DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&v| cr(v)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }

    pub fn orthonormality_defect(&self) -> f64 {
        unitarity_defect(&self.vectors)
    }
}

/// Spectrum of a unitary: unit-modulus eigenvalues, phases in (−π, π], orthonormal vectors.
#[derive(Debug, Clone)]
pub struct UnitaryEigen {
    pub values: Vec<C64>,
    pub phases: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl UnitaryEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::from_diagonal(&DVector::from_column_slice(&self.values));
        &self.vectors * d * self.vectors.adjoint()
    }

    /// Indices grouped by eigenphase; neighbours closer than `tol` (around the circle) share a group.
    pub fn degenerate_groups(&self, tol: f64) -> Vec<Vec<usize>> {
        let n = self.phases.len();
        if n == 0 {
            return vec![];
        }
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| self.phases[a].total_cmp(&self.phases[b]));
        let mut groups: Vec<Vec<usize>> = vec![vec![idx[0]]];
        for w in idx.windows(2) {
            if (self.phases[w[1]] - self.phases[w[0]]).abs() <= tol {
                groups.last_mut().unwrap().push(w[1]);
            } else {
                groups.push(vec![w[1]]);
            }
        }
        if groups.len() > 1 {
            let first = self.phases[idx[0]];
            let last = self.phases[idx[n - 1]];
            if (first + 2.0 * std::f64::consts::PI - last).abs() <= tol {
                let head = groups.remove(0);
                groups.last_mut().unwrap().extend(head);
            }
        }
        groups
    }
}

/// Hermitian eigendecomposition, eigenvalues ascending.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if h.nrows() != h.ncols() {
        return Err(WalkError::DimensionMismatch { expected: h.nrows(), got: h.ncols() });
    }
    let defect = hermitian_defect(h);
    if defect > OP_TOL {
        return Err(WalkError::NotHermitian(defect));
    }
    let n = h.nrows();
    if n == 0 {
        return Ok(EigenDecomposition { values: vec![], vectors: ComplexMatrix::zeros(0, 0) });
    }
    // symmetrize so the solver sees an exactly Hermitian input
    let hs = (h + h.adjoint()) * cr(0.5);
    let eig = hs.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vectors.set_column(k, &eig.eigenvectors.column(i));
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Eigendecomposition of a unitary via complex Schur form (diagonal for normal input).
pub fn eig_unitary(u: &ComplexMatrix) -> Result<UnitaryEigen> {
    if u.nrows() != u.ncols() {
        return Err(WalkError::DimensionMismatch { expected: u.nrows(), got: u.ncols() });
    }
    let defect = unitarity_defect(u);
    if defect > OP_TOL {
        return Err(WalkError::NotUnitary(defect));
    }
    let n = u.nrows();
    if n == 0 {
        return Ok(UnitaryEigen { values: vec![], phases: vec![], vectors: ComplexMatrix::zeros(0, 0) });
    }
    // the unbounded Schur iteration can stall on exactly degenerate spectra
    let Some(schur) = u.clone().try_schur(f64::EPSILON, 100 * n.max(10)) else {
        return eig_unitary_hermitian_split(u);
    };
    let (q, t) = schur.unpack();
    let mut off: f64 = 0.0;
    for j in 0..n {
        for i in 0..j {
            off = off.max(t[(i, j)].norm());
        }
    }
    if off > 1e-9 {
        return eig_unitary_hermitian_split(u);
    }
    let values: Vec<C64> = (0..n).map(|i| t[(i, i)] / cr(t[(i, i)].norm())).collect();
    let phases = values.iter().map(|z| z.arg()).collect();
    Ok(UnitaryEigen { values, phases, vectors: q })
}

// Fallback: diagonalize (U+U†)/2, then resolve each cos-degenerate block with (U−U†)/2i.
fn eig_unitary_hermitian_split(u: &ComplexMatrix) -> Result<UnitaryEigen> {
    let n = u.nrows();
    let re = (u + u.adjoint()) * cr(0.5);
    let im = (u - u.adjoint()) * c(0.0, -0.5);
    let e1 = eig_hermitian(&re)?;
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut col = 0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && e1.values[end] - e1.values[end - 1] < 1e-7 {
            end += 1;
        }
        let block = e1.vectors.columns(start, end - start).into_owned();
        let small = block.adjoint() * &im * &block;
        let e2 = eig_hermitian(&((&small + small.adjoint()) * cr(0.5)))?;
        let rotated = &block * &e2.vectors;
        for k in 0..rotated.ncols() {
            vectors.set_column(col, &rotated.column(k));
            col += 1;
        }
        start = end;
    }
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        let v = vectors.column(k);
        let z = v.dotc(&(u * v));
        values.push(z / cr(z.norm()));
    }
    let phases = values.iter().map(|z| z.arg()).collect();
    Ok(UnitaryEigen { values, phases, vectors })
}

/// Reusable e^{−iHt} built from one eigendecomposition.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: EigenDecomposition,
}

impl Propagator {
    pub fn new(h: &ComplexMatrix) -> Result<Self> {
        Ok(Self { eig: eig_hermitian(h)? })
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    pub fn dim(&self) -> usize {
        self.eig.values.len()
    }

    pub fn evolve_vector(&self, t: f64, psi: &ComplexVector) -> Result<ComplexVector> {
        if psi.len() != self.dim() {
            return Err(WalkError::DimensionMismatch { expected: self.dim(), got: psi.len() });
        }
        let v = &self.eig.vectors;
        let mut coef = v.adjoint() * psi;
        for (k, z) in coef.iter_mut().enumerate() {
            *z *= C64::from_polar(1.0, -self.eig.values[k] * t);
        }
        Ok(v * coef)
    }

    pub fn evolve(&self, t: f64, psi: &QuantumState) -> Result<QuantumState> {
        Ok(QuantumState::from_raw(self.evolve_vector(t, psi.amplitudes())?))
    }

    pub fn matrix(&self, t: f64) -> ComplexMatrix {
        let n = self.dim();
        let d = ComplexMatrix::from_diagonal(&DVector::from_iterator(
            n,
            self.eig.values.iter().map(|&e| C64::from_polar(1.0, -e * t)),
        ));
        &self.eig.vectors * d * self.eig.vectors.adjoint()
    }
}

/// e^{−iHt}ψ
pub fn evolve_hermitian(h: &ComplexMatrix, t: f64, psi: &QuantumState) -> Result<QuantumState> {
    if h.nrows() != psi.dim() {
        return Err(WalkError::DimensionMismatch { expected: h.nrows(), got: psi.dim() });
    }
    Propagator::new(h)?.evolve(t, psi)
}
