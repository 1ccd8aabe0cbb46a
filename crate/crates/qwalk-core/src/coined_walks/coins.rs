use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::core_math::{c, cr, unitarity_defect, ComplexMatrix, C64};
use crate::error::{invalid, Result, WalkError};

#[derive(Debug, Clone, PartialEq)]
pub enum CoinKind {
    Hadamard,
    /// [[1, i], [i, 1]]/√2
    Balanced,
    /// H^{⊗l}, d = 2^l
    WalshHadamard(usize),
    /// e^{2πi μν/d}/√d
    Dft(usize),
    /// −I + (2/d)J
    Grover(usize),
    /// d = 2D, coin states ordered |0,+⟩ |0,−⟩ |1,+⟩ ...
    FlipFlop(usize),
    /// e^{iφ} times the swap of paired coin states 2c ↔ 2c+1 (d even)
    Reflective { d: usize, phase: f64 },
    Custom(ComplexMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coin {
    matrix: ComplexMatrix,
}

impl Coin {
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return invalid("coin must be a nonempty square matrix");
        }
        let defect = unitarity_defect(&m);
        if defect > 1e-10 {
            return Err(WalkError::NotUnitary(defect));
        }
        Ok(Self { matrix: m })
    }

    pub fn d(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

/// Grover coin coefficients t = 2/d, r = 1 − t.
pub fn grover_params(d: usize) -> (f64, f64) {
    let t = 2.0 / d as f64;
    (t, 1.0 - t)
}

pub fn coin(kind: CoinKind) -> Result<Coin> {
    let m = match kind {
        CoinKind::Hadamard => {
            let h = FRAC_1_SQRT_2;
            ComplexMatrix::from_row_slice(2, 2, &[cr(h), cr(h), cr(h), cr(-h)])
        }
        CoinKind::Balanced => {
            let h = FRAC_1_SQRT_2;
            ComplexMatrix::from_row_slice(2, 2, &[cr(h), c(0.0, h), c(0.0, h), cr(h)])
        }
        CoinKind::WalshHadamard(d) => {
            if d == 0 || !d.is_power_of_two() {
                return invalid("Walsh-Hadamard coin needs d = 2^l");
            }
            let s = 1.0 / (d as f64).sqrt();
            ComplexMatrix::from_fn(d, d, |i, j| {
                let sign = if (i & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                cr(sign * s)
            })
        }
        CoinKind::Dft(d) => {
            if d == 0 {
                return invalid("DFT coin needs d >= 1");
            }
            let s = 1.0 / (d as f64).sqrt();
            ComplexMatrix::from_fn(d, d, |i, j| {
                let k = (i * j) % d;
                C64::from_polar(s, 2.0 * PI * k as f64 / d as f64)
            })
        }
        CoinKind::Grover(d) => {
            if d == 0 {
                return invalid("Grover coin needs d >= 1");
            }
            let (t, r) = grover_params(d);
            ComplexMatrix::from_fn(d, d, |i, j| if i == j { cr(-r) } else { cr(t) })
        }
        CoinKind::FlipFlop(d) => {
            if d < 2 || d % 2 == 1 {
                return invalid("flip-flop coin needs d = 2D");
            }
            let (t, r) = grover_params(d);
            // C|c,+⟩ = −r|c,+⟩ + t|c,−⟩ + tΣ_{e≠c}(|e,+⟩ + |e,−⟩), and the mirror for |c,−⟩
            ComplexMatrix::from_fn(d, d, |out, inp| if out == inp { cr(-r) } else { cr(t) })
        }
        CoinKind::Reflective { d, phase } => {
            if d < 2 || d % 2 == 1 {
                return invalid("reflective coin needs an even dimension");
            }
            let e = C64::from_polar(1.0, phase);
            ComplexMatrix::from_fn(d, d, |i, j| if i == (j ^ 1) { e } else { cr(0.0) })
        }
        CoinKind::Custom(m) => m,
    };
    Coin::from_matrix(m)
}
