use crate::core_math::{cr, C64};
use crate::error::{invalid, Result};

use super::coins::{coin, CoinKind};
use super::walk::CoinedWalk;

#[derive(Debug, Clone, PartialEq)]
pub struct AbsorbingLine {
    /// index m−1: mass absorbed at position 0 in step m
    pub per_step: Vec<f64>,
    pub cumulative: Vec<f64>,
    /// index m−1: 2^{m/2} times the amplitude absorbed in step m
    pub scaled_amplitude: Vec<f64>,
}

impl AbsorbingLine {
    pub fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }
}

/// Hadamard walk from |1⟩|↑⟩ with position 0 measured and removed after every step.
pub fn absorbing_line_quantum(m_max: usize) -> Result<AbsorbingLine> {
    if m_max == 0 {
        return invalid("m_max must be at least 1");
    }
    let w = CoinedWalk::line(coin(CoinKind::Hadamard)?, m_max + 1)?;
    let origin = w.position_of(0).expect("line contains 0");
    let mut v = w.state_at_label(1, &[cr(1.0), cr(0.0)])?.into_vector();
    let zero = C64::new(0.0, 0.0);
    let mut out = AbsorbingLine { per_step: vec![], cumulative: vec![], scaled_amplitude: vec![] };
    let mut total = 0.0;
    let mut scale = 1.0f64;
    for _ in 0..m_max {
        v = w.step_vec(&v);
        scale *= std::f64::consts::SQRT_2;
        // only the left-moving component can arrive at 0, and nothing ever lies below it
        debug_assert!(v[w.index(origin, 0)].norm() == 0.0);
        debug_assert!((0..origin * 2).all(|i| v[i] == zero));
        let a = v[w.index(origin, 1)];
        let mass = a.norm_sqr();
        total += mass;
        out.per_step.push(mass);
        out.cumulative.push(total);
        out.scaled_amplitude.push(a.re * scale);
        v[w.index(origin, 1)] = zero;
    }
    Ok(out)
}
