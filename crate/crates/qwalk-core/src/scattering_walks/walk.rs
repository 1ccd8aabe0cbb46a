use std::collections::HashMap;

use crate::coined_walks::CoinedWalk;
use crate::core_math::{cr, unitarity_defect, ComplexMatrix, ComplexVector, Distribution, QuantumState, C64};
use crate::error::{invalid, Result, WalkError};
use crate::graphs::Graph;

/// Directed edge states |m,l⟩ in lexicographic order; a loop contributes the single state |l,l⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBasis {
    edges: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

/// Γ(l): neighbours of l in ascending order, l itself included when it carries a loop.
pub fn gamma(g: &Graph, l: usize) -> Vec<usize> {
    let mut v = g.neighbors(l).to_vec();
    if g.has_loop(l) {
        v.push(l);
        v.sort_unstable();
    }
    v
}

impl EdgeBasis {
    pub fn new(g: &Graph) -> Self {
        let mut edges = Vec::new();
        for m in 0..g.n() {
            for l in gamma(g, m) {
                edges.push((m, l));
            }
        }
        let index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Self { edges, index }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn edge(&self, i: usize) -> (usize, usize) {
        self.edges[i]
    }
    pub fn index_of(&self, from: usize, to: usize) -> Option<usize> {
        self.index.get(&(from, to)).copied()
    }
}

/// Local scattering rule U^{(l)} : Ω_l → A_l.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalCoin {
    /// t = 2/d, r = 1 − t
    Grover,
    /// r = −e^{iφ}, t = 0: |k,l⟩ → e^{iφ}|l,k⟩
    Reflective { phase: f64 },
    /// degree-2 vertex with neighbours a < b: |a,l⟩ → r₀|l,a⟩ + t₀|l,b⟩, |b,l⟩ → t₀|l,a⟩ − r₀|l,b⟩
    TwoPort { r0: f64 },
    /// −r on the reflected state, t on every other outgoing state
    ReflectTransmit { r: C64, t: C64 },
    /// entry (i, j): amplitude from |Γ_j, l⟩ to |l, Γ_i⟩
    Matrix(ComplexMatrix),
}

impl LocalCoin {
    pub fn local_matrix(&self, d: usize) -> Result<ComplexMatrix> {
        let m = match self {
            LocalCoin::Grover => {
                let t = 2.0 / d as f64;
                ComplexMatrix::from_fn(d, d, |i, j| if i == j { cr(t - 1.0) } else { cr(t) })
            }
            LocalCoin::Reflective { phase } => ComplexMatrix::identity(d, d) * C64::from_polar(1.0, *phase),
            LocalCoin::TwoPort { r0 } => {
                if d != 2 {
                    return invalid("two-port rule needs a degree-2 vertex");
                }
                if !(-1.0..=1.0).contains(r0) {
                    return invalid("r0 must lie in [-1, 1]");
                }
                let t0 = (1.0 - r0 * r0).sqrt();
                ComplexMatrix::from_row_slice(2, 2, &[cr(*r0), cr(t0), cr(t0), cr(-r0)])
            }
            LocalCoin::ReflectTransmit { r, t } => ComplexMatrix::from_fn(d, d, |i, j| if i == j { -*r } else { *t }),
            LocalCoin::Matrix(m) => {
                if m.nrows() != d || m.ncols() != d {
                    return Err(WalkError::DimensionMismatch { expected: d, got: m.nrows() });
                }
                m.clone()
            }
        };
        let defect = unitarity_defect(&m);
        if defect > 1e-10 {
            return Err(WalkError::NotUnitary(defect));
        }
        Ok(m)
    }
}

/// Scattering quantum walk U = Γ ⊕_l U^{(l)} on the edge states of a graph.
#[derive(Debug, Clone)]
pub struct ScatteringWalk {
    graph: Graph,
    basis: EdgeBasis,
    gammas: Vec<Vec<usize>>,
    local: Vec<ComplexMatrix>,
}

impl ScatteringWalk {
    /// One rule per vertex.
    pub fn build(g: &Graph, coins: &[LocalCoin]) -> Result<Self> {
        if coins.len() != g.n() {
            return Err(WalkError::DimensionMismatch { expected: g.n(), got: coins.len() });
        }
        let gammas: Vec<Vec<usize>> = (0..g.n()).map(|l| gamma(g, l)).collect();
        let local = coins
            .iter()
            .zip(&gammas)
            .map(|(c, gl)| c.local_matrix(gl.len()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { graph: g.clone(), basis: EdgeBasis::new(g), gammas, local })
    }

    pub fn uniform(g: &Graph, coin: LocalCoin) -> Result<Self> {
        Self::build(g, &vec![coin; g.n()])
    }

    /// SQW equivalent of a coined walk via |x⟩⊗|c⟩ ↔ |x ⊖ c, x⟩.
    pub fn from_coined(w: &CoinedWalk, g: &Graph) -> Result<Self> {
        let col = w.coloring();
        if col.n() != g.n() {
            return Err(WalkError::DimensionMismatch { expected: g.n(), got: col.n() });
        }
        let d = col.d();
        let mut prev = vec![vec![usize::MAX; d]; g.n()];
        for x in 0..g.n() {
            for c in 0..d {
                if !col.is_permutation(c) {
                    return invalid("every colour class must be a permutation");
                }
                prev[col.next(x, c)][c] = x;
            }
        }
        let mut coins = Vec::with_capacity(g.n());
        for x in 0..g.n() {
            let gl = gamma(g, x);
            if gl.len() != d {
                return Err(WalkError::NotRegular);
            }
            let pos = |v: usize| gl.iter().position(|&u| u == v).ok_or(WalkError::LabelMismatch);
            let cm = w.coin_at(x).matrix();
            let mut m = ComplexMatrix::zeros(d, d);
            for c in 0..d {
                let j = pos(prev[x][c])?;
                for c2 in 0..d {
                    let i = pos(col.next(x, c2))?;
                    m[(i, j)] += cm[(c2, c)];
                }
            }
            coins.push(LocalCoin::Matrix(m));
        }
        Self::build(g, &coins)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
    pub fn basis(&self) -> &EdgeBasis {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn local(&self, l: usize) -> &ComplexMatrix {
        &self.local[l]
    }

    pub fn step_vec(&self, psi: &ComplexVector) -> ComplexVector {
        let mut out = ComplexVector::zeros(psi.len());
        for (idx, &(k, l)) in self.basis.edges.iter().enumerate() {
            let a = psi[idx];
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let gl = &self.gammas[l];
            let j = gl.binary_search(&k).expect("edge source is a neighbour");
            let m = &self.local[l];
            for (i, &dest) in gl.iter().enumerate() {
                let amp = m[(i, j)];
                if amp.re != 0.0 || amp.im != 0.0 {
                    out[self.basis.index[&(l, dest)]] += amp * a;
                }
            }
        }
        out
    }

    pub fn check(&self, psi: &QuantumState) -> Result<()> {
        if psi.dim() != self.dim() {
            return Err(WalkError::DimensionMismatch { expected: self.dim(), got: psi.dim() });
        }
        Ok(())
    }

    pub fn run(&self, psi0: &QuantumState, m: usize) -> Result<QuantumState> {
        self.check(psi0)?;
        let mut v = psi0.amplitudes().clone();
        for _ in 0..m {
            v = self.step_vec(&v);
        }
        QuantumState::new(v)
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut u = ComplexMatrix::zeros(n, n);
        let mut e = ComplexVector::zeros(n);
        for j in 0..n {
            e[j] = cr(1.0);
            u.set_column(j, &self.step_vec(&e));
            e[j] = cr(0.0);
        }
        u
    }

    /// Equal superposition of all edge states.
    pub fn uniform_state(&self) -> QuantumState {
        QuantumState::uniform(self.dim())
    }

    pub fn edge_state(&self, from: usize, to: usize) -> Result<QuantumState> {
        let i = self
            .basis
            .index_of(from, to)
            .ok_or_else(|| WalkError::InvalidParameter(format!("no edge state |{from},{to}⟩")))?;
        Ok(QuantumState::basis(self.dim(), i))
    }

    /// Probability that the walker is entering each vertex (mass of Ω_x).
    pub fn vertex_distribution(&self, psi: &QuantumState) -> Result<Distribution> {
        self.check(psi)?;
        let mut p = vec![0.0; self.graph.n()];
        for (i, &(_, l)) in self.basis.edges.iter().enumerate() {
            p[l] += psi.amplitudes()[i].norm_sqr();
        }
        Distribution::from_weights((0..self.graph.n() as i64).collect(), p)
    }

    /// Permutation U_a|v1,v2⟩ = |a(v1),a(v2)⟩ induced by a vertex map.
    pub fn automorphism_matrix(&self, a: &[usize]) -> Result<ComplexMatrix> {
        if a.len() != self.graph.n() {
            return Err(WalkError::DimensionMismatch { expected: self.graph.n(), got: a.len() });
        }
        let n = self.dim();
        let mut p = ComplexMatrix::zeros(n, n);
        for (j, &(u, v)) in self.basis.edges.iter().enumerate() {
            let i = self.basis.index_of(a[u], a[v]).ok_or_else(|| WalkError::InvalidParameter("map is not an automorphism".into()))?;
            p[(i, j)] = cr(1.0);
        }
        Ok(p)
    }
}
