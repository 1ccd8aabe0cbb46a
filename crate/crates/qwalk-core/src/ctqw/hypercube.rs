use crate::error::{invalid, Result};
use crate::graphs::Graph;

use super::hamiltonian::{CtqwPropagator, Hamiltonian, WeightedLine};

/// |⟨11…1|e^{iAt}|00…0⟩|² = (sin²t)ⁿ, one independent qubit rotation per coordinate.
pub fn hypercube_antipode_prob(n: usize, t: f64) -> Result<f64> {
    if n == 0 {
        return invalid("hypercube dimension must be at least 1");
    }
    Ok(t.sin().powi(2).powi(n as i32))
}

/// The same probability from a full 2ⁿ-dimensional evolution with H = −A.
pub fn hypercube_antipode_full(n: usize, times: &[f64]) -> Result<Vec<f64>> {
    if n == 0 || n > 12 {
        return invalid("full simulation supports 1 <= n <= 12");
    }
    let h = Hamiltonian::negative_adjacency(&Graph::hypercube(n)?)?;
    let p = CtqwPropagator::new(&h);
    let far = (1usize << n) - 1;
    Ok(times.iter().map(|&t| p.column(t, 0)[far].norm_sqr()).collect())
}

/// Hamming-weight reduction: a line of n+1 symmetric states with weights √((n−k)(k+1)).
pub fn hypercube_weight_line(n: usize) -> Result<WeightedLine> {
    if n == 0 {
        return invalid("hypercube dimension must be at least 1");
    }
    WeightedLine::new((0..n).map(|k| (((n - k) * (k + 1)) as f64).sqrt()).collect())
}
