use std::f64::consts::PI;

use super::linalg::C64;
use crate::error::{Result, WalkError};

/// Catalan number C_n = binom(2n, n)/(n+1), exact.
pub fn catalan(n: u32) -> Result<u64> {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        // C_{k+1} = 2(2k+1) C_k / (k+2), always divisible
        c = c * 2 * (2 * k + 1) / (k + 2);
        if c > u64::MAX as u128 {
            return Err(WalkError::Overflow(format!("C_{n} exceeds 64 bits")));
        }
    }
    Ok(c as u64)
}

/// C_n / 4^n in floating point, usable far beyond the exact range.
pub fn catalan_scaled(n: u32) -> f64 {
    let mut r = 1.0;
    for k in 0..n {
        let k = k as f64;
        r *= 2.0 * (2.0 * k + 1.0) / (4.0 * (k + 2.0));
    }
    r
}

/// Bessel function of the first kind J_n(x).
///
/// Miller's downward recurrence normalized with J_0 + 2ΣJ_{2k} = 1. The
/// recurrence is stable downward for every x, so one path covers the whole
/// range; the ascending series loses digits to cancellation once x grows.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    if n < 0 {
        let v = bessel_j(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x < 0.0 {
        let v = bessel_j(n, -x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nu = n as usize;
    let top = nu.max(x.ceil() as usize);
    let mut m = top + (40.0 * top as f64).sqrt() as usize + 30;
    if m % 2 == 1 {
        m += 1;
    }
    let mut jp1 = 0.0; // J_{k+1}
    let mut jk = 1e-300; // J_k at k = m
    let mut sum = 0.0;
    let mut target = 0.0;
    let mut k = m;
    loop {
        if k == nu {
            target = jk;
        }
        if k % 2 == 0 {
            sum += if k == 0 { jk } else { 2.0 * jk };
        }
        if k == 0 {
            break;
        }
        let jm1 = (2.0 * k as f64 / x) * jk - jp1;
        jp1 = jk;
        jk = jm1;
        k -= 1;
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jp1 *= 1e-250;
            sum *= 1e-250;
            target *= 1e-250;
        }
    }
    target / sum
}

/// Truncated power series Σ (−1)^k (x/2)^{2k+n} / (k!(k+n)!); accurate for small |x|.
pub fn bessel_j_series(n: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    for i in 1..=n {
        term *= half / i as f64;
    }
    let mut s = term;
    for k in 1..200 {
        term *= -half * half / (k as f64 * (k + n) as f64);
        s += term;
        if term.abs() < 1e-18 * s.abs().max(1e-300) {
            break;
        }
    }
    s
}

/// Leading stationary-phase contribution of one endpoint a of ∫ g(k) e^{i m φ(k)} dk.
pub fn stationary_phase_p2(g_a: f64, phi_a: f64, phi2_a: f64, m: u32) -> Result<C64> {
    if phi2_a == 0.0 || !phi2_a.is_finite() {
        return Err(WalkError::Degenerate("second derivative of the phase is zero".into()));
    }
    if m < 1 {
        return Err(WalkError::InvalidParameter("m must be at least 1".into()));
    }
    let m = m as f64;
    let mag = (PI / (2.0 * m * phi2_a.abs())).sqrt() * g_a;
    let arg = m * phi_a + phi2_a.signum() * PI / 4.0;
    Ok(C64::from_polar(1.0, arg) * mag)
}
