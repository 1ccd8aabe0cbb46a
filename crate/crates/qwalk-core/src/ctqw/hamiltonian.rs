use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::core_math::{evolve_hermitian, from_real, ComplexMatrix, ComplexVector, QuantumState, C64};
use crate::error::{invalid, Result, WalkError};
use crate::graphs::{Graph, MatrixKind};

pub const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric generator of a continuous-time walk.
#[derive(Debug, Clone)]
pub struct Hamiltonian {
    matrix: DMatrix<f64>,
    labels: Vec<String>,
}

impl Hamiltonian {
    pub fn new(matrix: DMatrix<f64>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return invalid("Hamiltonian must be a nonempty square matrix");
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return invalid("Hamiltonian has non-finite entries");
        }
        let defect = (&matrix - matrix.transpose()).abs().max();
        if defect > SYMMETRY_TOL {
            return Err(WalkError::NotHermitian(defect));
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(WalkError::DimensionMismatch { expected: n, got: labels.len() });
        }
        Ok(Hamiltonian { matrix, labels })
    }

    fn from_graph(g: &Graph, m: DMatrix<f64>) -> Result<Self> {
        Hamiltonian::new(m, g.labels().map(|l| l.to_vec()))
    }

    pub fn adjacency(g: &Graph) -> Result<Self> {
        Hamiltonian::from_graph(g, g.adjacency_real())
    }

    /// H = −A
    pub fn negative_adjacency(g: &Graph) -> Result<Self> {
        Hamiltonian::from_graph(g, -g.adjacency_real())
    }

    /// L = A − D
    pub fn laplacian(g: &Graph) -> Result<Self> {
        Hamiltonian::from_graph(g, g.matrix_real(MatrixKind::Laplacian))
    }

    /// H = −γA − Σ_{w∈W}|w⟩⟨w|
    pub fn search(g: &Graph, gamma: f64, marked: &[usize]) -> Result<Self> {
        let mut m = -g.adjacency_real() * gamma;
        for &w in check_marked(g.n(), marked)?.iter() {
            m[(w, w)] -= 1.0;
        }
        Hamiltonian::from_graph(g, m)
    }

    /// H = −|s⟩⟨s| − Σ_{w∈W}|w⟩⟨w| on N items.
    pub fn grover(n: usize, marked: &[usize]) -> Result<Self> {
        let mut m = DMatrix::from_element(n, n, -1.0 / n as f64);
        for &w in check_marked(n, marked)?.iter() {
            m[(w, w)] -= 1.0;
        }
        Hamiltonian::new(m, None)
    }

    /// H = −Σ_k w_k (|k⟩⟨k+1| + |k+1⟩⟨k|)
    pub fn weighted_line(line: &WeightedLine) -> Result<Self> {
        let n = line.nodes();
        let mut m = DMatrix::zeros(n, n);
        for (k, &w) in line.weights().iter().enumerate() {
            m[(k, k + 1)] = -w;
            m[(k + 1, k)] = -w;
        }
        Hamiltonian::new(m, None)
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn complex(&self) -> ComplexMatrix {
        from_real(&self.matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

fn check_marked(n: usize, marked: &[usize]) -> Result<Vec<usize>> {
    let mut seen = vec![false; n];
    for &w in marked {
        if w >= n {
            return invalid(format!("marked vertex {w} outside 0..{n}"));
        }
        if seen[w] {
            return invalid(format!("marked vertex {w} listed twice"));
        }
        seen[w] = true;
    }
    Ok(marked.to_vec())
}

/// Path with a positive hop weight on every link.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedLine {
    weights: Vec<f64>,
}

impl WeightedLine {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return invalid("line weights must be positive");
        }
        Ok(WeightedLine { weights })
    }

    pub fn nodes(&self) -> usize {
        self.weights.len() + 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// e^{−iHt} from one real symmetric eigendecomposition.
#[derive(Debug, Clone)]
pub struct CtqwPropagator {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

impl CtqwPropagator {
    pub fn new(h: &Hamiltonian) -> Self {
        let eig = SymmetricEigen::new(h.matrix.clone());
        let mut order: Vec<usize> = (0..h.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = DMatrix::from_fn(h.dim(), h.dim(), |i, j| eig.eigenvectors[(i, order[j])]);
        CtqwPropagator { values, vectors }
    }

    /// Energies in ascending order.
    pub fn energies(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn spectral_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn evolve(&self, t: f64, psi: &ComplexVector) -> Result<ComplexVector> {
        if psi.len() != self.dim() {
            return Err(WalkError::DimensionMismatch { expected: self.dim(), got: psi.len() });
        }
        let v = from_real(&self.vectors);
        let mut coef = v.adjoint() * psi;
        for (k, z) in coef.iter_mut().enumerate() {
            *z *= C64::from_polar(1.0, -self.values[k] * t);
        }
        Ok(v * coef)
    }

    /// ⟨y|e^{−iHt}|x⟩ for every y.
    pub fn column(&self, t: f64, x: usize) -> DVector<C64> {
        let phases: Vec<C64> =
            (0..self.dim()).map(|k| C64::from_polar(self.vectors[(x, k)], -self.values[k] * t)).collect();
        DVector::from_fn(self.dim(), |y, _| (0..self.dim()).map(|k| phases[k] * self.vectors[(y, k)]).sum())
    }

    /// p_t(x → y) for every y.
    pub fn transition_probs(&self, t: f64, x: usize) -> Vec<f64> {
        self.column(t, x).iter().map(|z| z.norm_sqr()).collect()
    }
}

/// e^{−iHt}ψ₀ through the dense Hermitian evolution.
pub fn ctqw_run(h: &Hamiltonian, t: f64, psi0: &QuantumState) -> Result<QuantumState> {
    evolve_hermitian(&h.complex(), t, psi0)
}
