use crate::core_math::{cr, ComplexMatrix, ComplexVector, Distribution, QuantumState, C64};
use crate::error::{invalid, Result, WalkError};
use crate::graphs::{color_edges, EdgeColoring, Graph};

use super::coins::Coin;

/// U = S·(⊕_x C_x) on position ⊗ coin, basis index x·d + c.
#[derive(Debug, Clone)]
pub struct CoinedWalk {
    coloring: EdgeColoring,
    coins: Vec<Coin>,
    labels: Vec<i64>,
}

impl CoinedWalk {
    pub fn new(coloring: EdgeColoring, coin: Coin) -> Result<Self> {
        let n = coloring.n();
        Self::with_coins(coloring, vec![coin; n])
    }

    /// One coin per vertex.
    pub fn with_coins(coloring: EdgeColoring, coins: Vec<Coin>) -> Result<Self> {
        let n = coloring.n();
        if coins.len() != n {
            return Err(WalkError::DimensionMismatch { expected: n, got: coins.len() });
        }
        if coins.iter().any(|c| c.d() != coloring.d()) {
            return invalid("coin dimension differs from the number of colours");
        }
        Ok(Self { coloring, coins, labels: (0..n as i64).collect() })
    }

    pub fn on_graph(g: &Graph, coin: Coin) -> Result<Self> {
        Self::new(color_edges(g)?, coin)
    }

    /// Walk on the line long enough that m steps from 0 never wrap (positions −(m+2)..=m+2).
    pub fn line(coin: Coin, m: usize) -> Result<Self> {
        let half = m + 2;
        let g = Graph::cycle(2 * half + 1)?;
        let mut w = Self::on_graph(&g, coin)?;
        w.labels = (0..g.n() as i64).map(|i| i - half as i64).collect();
        Ok(w)
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(WalkError::DimensionMismatch { expected: self.n(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.coloring.n()
    }
    pub fn d(&self) -> usize {
        self.coloring.d()
    }
    pub fn dim(&self) -> usize {
        self.n() * self.d()
    }
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }
    pub fn coloring(&self) -> &EdgeColoring {
        &self.coloring
    }
    pub fn coin_at(&self, x: usize) -> &Coin {
        &self.coins[x]
    }

    pub fn index(&self, x: usize, c: usize) -> usize {
        x * self.d() + c
    }

    pub fn position_of(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// |x⟩ ⊗ (coin amplitudes), normalized.
    pub fn state(&self, x: usize, coin_amps: &[C64]) -> Result<QuantumState> {
        if coin_amps.len() != self.d() || x >= self.n() {
            return invalid("coin amplitudes or position do not match the walk");
        }
        let mut v = ComplexVector::zeros(self.dim());
        for (c, &a) in coin_amps.iter().enumerate() {
            v[self.index(x, c)] = a;
        }
        QuantumState::normalized(v)
    }

    pub fn state_at_label(&self, label: i64, coin_amps: &[C64]) -> Result<QuantumState> {
        let x = self.position_of(label).ok_or_else(|| WalkError::InvalidParameter(format!("no position {label}")))?;
        self.state(x, coin_amps)
    }

    pub fn step_vec(&self, psi: &ComplexVector) -> ComplexVector {
        let d = self.d();
        let mut out = ComplexVector::zeros(psi.len());
        let mut tmp = vec![C64::new(0.0, 0.0); d];
        for x in 0..self.n() {
            let block = psi.rows(x * d, d);
            if block.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                continue;
            }
            let cm = self.coins[x].matrix();
            for (c, t) in tmp.iter_mut().enumerate() {
                let mut s = C64::new(0.0, 0.0);
                for c2 in 0..d {
                    s += cm[(c, c2)] * block[c2];
                }
                *t = s;
            }
            for c in 0..d {
                out[self.coloring.next(x, c) * d + c] = tmp[c];
            }
        }
        out
    }

    pub fn run(&self, psi0: &QuantumState, m: usize) -> Result<QuantumState> {
        self.check(psi0)?;
        let mut v = psi0.amplitudes().clone();
        for _ in 0..m {
            v = self.step_vec(&v);
        }
        Ok(QuantumState::from_raw(v))
    }

    pub(crate) fn check(&self, psi: &QuantumState) -> Result<()> {
        if psi.dim() != self.dim() {
            return Err(WalkError::DimensionMismatch { expected: self.dim(), got: psi.dim() });
        }
        Ok(())
    }

    /// Shift operator S alone (a permutation matrix).
    pub fn shift_matrix(&self) -> ComplexMatrix {
        let d = self.d();
        let mut s = ComplexMatrix::zeros(self.dim(), self.dim());
        for x in 0..self.n() {
            for c in 0..d {
                s[(self.coloring.next(x, c) * d + c, x * d + c)] = cr(1.0);
            }
        }
        s
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

    /// U ρ U† without forming U.
    pub fn conjugate(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim();
        let mut half = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let col = rho.column(j).into_owned();
            half.set_column(j, &self.step_vec(&col));
        }
        // U (Uρ)† = (UρU†)†, and the result is Hermitian
        let mut out = ComplexMatrix::zeros(n, n);
        let ha = half.adjoint();
        for j in 0..n {
            let col = ha.column(j).into_owned();
            out.set_column(j, &self.step_vec(&col));
        }
        out.adjoint()
    }

    /// p(x) = Σ_c |⟨x,c|ψ⟩|²
    pub fn position_distribution(&self, psi: &QuantumState) -> Result<Distribution> {
        self.check(psi)?;
        let d = self.d();
        let p = psi.amplitudes().as_slice().chunks(d).map(|b| b.iter().map(|z| z.norm_sqr()).sum()).collect();
        Distribution::new(self.labels.clone(), p)
    }

    pub fn position_distribution_vec(&self, v: &ComplexVector) -> Vec<f64> {
        v.as_slice().chunks(self.d()).map(|b| b.iter().map(|z| z.norm_sqr()).sum()).collect()
    }
}

/// The initial state (√q, √(1−q) e^{iσ}) on the coin.
pub fn initial_symmetry(q: f64, sigma: f64) -> Result<[C64; 2]> {
    if !(0.0..=1.0).contains(&q) {
        return invalid("q must lie in [0, 1]");
    }
    Ok([cr(q.sqrt()), C64::from_polar((1.0 - q).sqrt(), sigma)])
}
