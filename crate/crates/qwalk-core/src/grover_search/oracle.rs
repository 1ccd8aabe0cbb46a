use crate::core_math::{c, cr, ComplexMatrix, ComplexVector, C64};
use crate::error::{invalid, Result};

/// Phase oracle R_𝒦 = I − 2Σ_{j∈𝒦}|j⟩⟨j| with a query ledger.
#[derive(Debug, Clone)]
pub struct Oracle {
    n: usize,
    marked: Vec<usize>,
    is_marked: Vec<bool>,
    queries: u64,
}

impl Oracle {
    pub fn new(n: usize, marked: &[usize]) -> Result<Self> {
        if n == 0 {
            return invalid("search space must be nonempty");
        }
        let mut is_marked = vec![false; n];
        for &j in marked {
            if j >= n {
                return invalid(format!("marked element {j} outside 0..{n}"));
            }
            if is_marked[j] {
                return invalid(format!("marked element {j} listed twice"));
            }
            is_marked[j] = true;
        }
        let mut marked = marked.to_vec();
        marked.sort_unstable();
        Ok(Oracle { n, marked, is_marked, queries: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.marked.len()
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    pub fn is_marked(&self, j: usize) -> bool {
        self.is_marked.get(j).copied().unwrap_or(false)
    }

    /// f_𝒦(x); not counted, it is the classical description of the oracle.
    pub fn f(&self, x: usize) -> u8 {
        u8::from(self.is_marked(x))
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// One query: flip the sign of every marked amplitude.
    pub fn apply(&mut self, v: &mut ComplexVector) {
        assert_eq!(v.len(), self.n, "oracle applied to a vector of the wrong size");
        self.queries += 1;
        for &j in &self.marked {
            v[j] = -v[j];
        }
    }

    /// One query: R_M^φ = e^{iφ}Π_M + (I − Π_M). The inverse is `apply_phase(−φ)` and also costs one query.
    pub fn apply_phase(&mut self, v: &mut ComplexVector, phi: f64) {
        assert_eq!(v.len(), self.n, "oracle applied to a vector of the wrong size");
        self.queries += 1;
        let w = c(phi.cos(), phi.sin());
        for &j in &self.marked {
            v[j] *= w;
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| {
            if i != j {
                cr(0.0)
            } else if self.is_marked[i] {
                cr(-1.0)
            } else {
                cr(1.0)
            }
        })
    }

    /// Success probability Σ_{j∈𝒦}|ψ_j|².
    pub fn marked_mass(&self, v: &ComplexVector) -> f64 {
        self.marked.iter().map(|&j| v[j].norm_sqr()).sum()
    }
}

/// |s⟩, the uniform superposition.
pub fn uniform_vector(n: usize) -> ComplexVector {
    ComplexVector::from_element(n, cr(1.0 / (n as f64).sqrt()))
}

// pairwise summation keeps the rounding of long means near machine precision
fn pairwise_sum(x: &[C64]) -> C64 {
    if x.len() <= 32 {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn mean(v: &ComplexVector) -> C64 {
    pairwise_sum(v.as_slice()) / cr(v.len() as f64)
}

/// R_s^θ = e^{iθ}|s⟩⟨s| + (I − |s⟩⟨s|) applied as a rank-one update.
pub fn apply_uniform_phase(v: &mut ComplexVector, theta: f64) {
    let mean = mean(v);
    let shift = (c(theta.cos(), theta.sin()) - cr(1.0)) * mean;
    for z in v.iter_mut() {
        *z += shift;
    }
}

/// C_G = 2|s⟩⟨s| − I, inversion about the average.
pub fn apply_diffusion(v: &mut ComplexVector) {
    let mean = mean(v);
    for z in v.iter_mut() {
        *z = mean * cr(2.0) - *z;
    }
}

pub fn diffusion_matrix(n: usize) -> ComplexMatrix {
    let s = uniform_vector(n);
    &s * s.adjoint() * cr(2.0) - ComplexMatrix::identity(n, n)
}

/// e^{iθ}|v⟩⟨v| + (I − |v⟩⟨v|) for a unit vector v; θ = π gives I − 2|v⟩⟨v|.
pub fn selective_phase_matrix(v: &ComplexVector, theta: f64) -> ComplexMatrix {
    let n = v.len();
    ComplexMatrix::identity(n, n) + v * v.adjoint() * (c(theta.cos(), theta.sin()) - cr(1.0))
}
