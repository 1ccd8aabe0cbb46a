use crate::core_math::bessel_j;
use crate::error::{invalid, Result};
use crate::graphs::Graph;

use super::hamiltonian::{CtqwPropagator, Hamiltonian};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselCheck {
    /// y − x as the shortest signed offset on the cycle
    pub offset: i64,
    pub exact: f64,
    pub bessel: f64,
    pub deviation: f64,
}

fn signed_offset(n: usize, x: usize, y: usize) -> i64 {
    let d = (y + n - x) % n;
    if 2 * d > n {
        d as i64 - n as i64
    } else {
        d as i64
    }
}

fn check_regime(n: usize, offset: i64, t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return invalid("time must be nonnegative");
    }
    if (n as f64) < 8.0 * t + offset.unsigned_abs() as f64 {
        return invalid(format!("wrap-around regime: N = {n} < 8t + |y − x| = {}", 8.0 * t + offset.abs() as f64));
    }
    Ok(())
}

/// |⟨y|e^{iA t}|x⟩|² on cycle(N) against |J_{y−x}(2t)|².
pub fn cycle_bessel_check(n: usize, x: usize, y: usize, t: f64) -> Result<BesselCheck> {
    if x >= n || y >= n {
        return invalid("vertices must lie on the cycle");
    }
    let offset = signed_offset(n, x, y);
    check_regime(n, offset, t)?;
    let h = Hamiltonian::negative_adjacency(&Graph::cycle(n)?)?;
    let exact = CtqwPropagator::new(&h).transition_probs(t, x)[y];
    Ok(bessel_row(offset, exact, t))
}

fn bessel_row(offset: i64, exact: f64, t: f64) -> BesselCheck {
    let bessel = bessel_j(offset as i32, 2.0 * t).powi(2);
    BesselCheck { offset, exact, bessel, deviation: (exact - bessel).abs() }
}

/// Every offset |y − x| ≤ max_offset from one evolution of |x⟩.
pub fn cycle_bessel_profile(n: usize, x: usize, t: f64, max_offset: usize) -> Result<Vec<BesselCheck>> {
    if x >= n || 2 * max_offset >= n {
        return invalid("offsets must stay within half the cycle");
    }
    check_regime(n, max_offset as i64, t)?;
    let h = Hamiltonian::negative_adjacency(&Graph::cycle(n)?)?;
    let p = CtqwPropagator::new(&h).transition_probs(t, x);
    Ok((-(max_offset as i64)..=max_offset as i64)
        .map(|d| bessel_row(d, p[((x as i64 + d).rem_euclid(n as i64)) as usize], t))
        .collect())
}

/// "position,probability" rows, offsets relative to the start vertex.
pub fn wavefront_csv(rows: &[BesselCheck]) -> String {
    let mut s = String::from("position,probability\n");
    for r in rows {
        s.push_str(&format!("{},{:.16e}\n", r.offset, r.exact));
    }
    s
}
