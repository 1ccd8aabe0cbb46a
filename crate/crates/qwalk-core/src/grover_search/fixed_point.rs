use std::f64::consts::PI;

use crate::core_math::ComplexVector;
use crate::error::Result;

use super::oracle::{apply_uniform_phase, uniform_vector, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointBase {
    /// U₀ = I, no queries
    Identity,
    /// U₀ = R_s^π R_M^π, one query
    GroverIterate,
}

impl FixedPointBase {
    pub fn cost(self) -> u64 {
        match self {
            FixedPointBase::Identity => 0,
            FixedPointBase::GroverIterate => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointLevel {
    pub level: u32,
    pub failure: f64,
    pub queries: u64,
}

/// q_k = 3^k n + (3^k − 1)/2.
pub fn fixed_point_queries(level: u32, base_cost: u64) -> u64 {
    let p = 3u64.pow(level);
    p * base_cost + (p - 1) / 2
}

fn apply_base(base: FixedPointBase, oracle: &mut Oracle, v: &mut ComplexVector, dagger: bool) {
    if base == FixedPointBase::Identity {
        return;
    }
    // both factors are self-inverse, so the adjoint only reverses the order
    if dagger {
        apply_uniform_phase(v, PI);
        oracle.apply(v);
    } else {
        oracle.apply(v);
        apply_uniform_phase(v, PI);
    }
}

// U_k = U_{k−1} R_s^{π/3} U_{k−1}† R_M^{π/3} U_{k−1}; U_k† = U_{k−1}† R_M^{−π/3} U_{k−1} R_s^{−π/3} U_{k−1}†.
fn apply_level(level: u32, base: FixedPointBase, oracle: &mut Oracle, v: &mut ComplexVector, dagger: bool) {
    if level == 0 {
        return apply_base(base, oracle, v, dagger);
    }
    let l = level - 1;
    let phi = PI / 3.0;
    if dagger {
        apply_level(l, base, oracle, v, true);
        apply_uniform_phase(v, -phi);
        apply_level(l, base, oracle, v, false);
        oracle.apply_phase(v, -phi);
        apply_level(l, base, oracle, v, true);
    } else {
        apply_level(l, base, oracle, v, false);
        oracle.apply_phase(v, phi);
        apply_level(l, base, oracle, v, true);
        apply_uniform_phase(v, phi);
        apply_level(l, base, oracle, v, false);
    }
}

/// Measured failure probability and ledger count of U_k|s⟩.
pub fn fixed_point_run(level: u32, n: usize, marked: &[usize], base: FixedPointBase) -> Result<FixedPointLevel> {
    let mut oracle = Oracle::new(n, marked)?;
    let mut v = uniform_vector(n);
    apply_level(level, base, &mut oracle, &mut v, false);
    let failure = (v.norm_squared() - oracle.marked_mass(&v)).max(0.0);
    Ok(FixedPointLevel { level, failure, queries: oracle.queries() })
}

/// Levels 0..=max_level, each from a fresh ledger.
pub fn fixed_point_series(max_level: u32, n: usize, marked: &[usize], base: FixedPointBase) -> Result<Vec<FixedPointLevel>> {
    (0..=max_level).map(|k| fixed_point_run(k, n, marked, base)).collect()
}
