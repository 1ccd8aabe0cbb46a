use crate::core_math::Distribution;
use crate::error::{invalid, Result};

use super::hamiltonian::{CtqwPropagator, Hamiltonian};

/// Energies closer than this are one eigenspace.
pub const ENERGY_TOL: f64 = 1e-8;

/// Index groups of (sorted) energies that coincide within `ENERGY_TOL`.
pub fn energy_groups(energies: &[f64]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, &e) in energies.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (e - energies[*g.last().expect("groups are nonempty")]).abs() <= ENERGY_TOL => g.push(k),
            _ => groups.push(vec![k]),
        }
    }
    groups
}

fn check_start(h: &Hamiltonian, x: usize) -> Result<()> {
    if x >= h.dim() {
        return invalid(format!("start vertex {x} outside 0..{}", h.dim()));
    }
    Ok(())
}

/// π(x → y) = Σ_E |⟨y|P_E|x⟩|².
pub fn ctqw_limiting(h: &Hamiltonian, x: usize) -> Result<Distribution> {
    check_start(h, x)?;
    let p = CtqwPropagator::new(h);
    let v = p.vectors();
    let groups = energy_groups(p.energies());
    let probs = (0..h.dim())
        .map(|y| {
            groups
                .iter()
                .map(|g| g.iter().map(|&k| v[(y, k)] * v[(x, k)]).sum::<f64>().powi(2))
                .sum()
        })
        .collect();
    Distribution::indexed(probs)
}

#[derive(Debug, Clone)]
pub struct TimeAverage {
    pub distribution: Distribution,
    pub step: f64,
    /// |S_h − S_{2h}|/15 summed over y
    pub richardson_error: f64,
}

/// p̄_T(x → y) = (1/T)∫₀^T p_t(x → y) dt by composite Simpson with step ≤ 0.05/‖H‖.
pub fn ctqw_time_average(h: &Hamiltonian, x: usize, big_t: f64) -> Result<TimeAverage> {
    check_start(h, x)?;
    if !(big_t > 0.0 && big_t.is_finite()) {
        return invalid("averaging time must be positive");
    }
    let p = CtqwPropagator::new(h);
    let norm = p.spectral_norm().max(1e-12);
    // a multiple of 4 so that the doubled step is also a Simpson rule
    let intervals = ((big_t * norm / 0.05).ceil() as usize).div_ceil(4).max(1) * 4;
    let step = big_t / intervals as f64;
    let n = h.dim();
    let mut fine = vec![0.0; n];
    let mut coarse = vec![0.0; n];
    for i in 0..=intervals {
        let row = p.transition_probs(i as f64 * step, x);
        let wf = if i == 0 || i == intervals { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let wc = if i % 2 == 1 {
            0.0
        } else if i == 0 || i == intervals {
            1.0
        } else if (i / 2) % 2 == 1 {
            4.0
        } else {
            2.0
        };
        for y in 0..n {
            fine[y] += wf * row[y];
            coarse[y] += wc * row[y];
        }
    }
    let fine: Vec<f64> = fine.iter().map(|s| s * step / 3.0 / big_t).collect();
    let coarse: Vec<f64> = coarse.iter().map(|s| s * 2.0 * step / 3.0 / big_t).collect();
    let richardson_error = fine.iter().zip(&coarse).map(|(a, b)| (a - b).abs() / 15.0).sum();
    Ok(TimeAverage { distribution: Distribution::indexed(fine)?, step, richardson_error })
}

/// Closed form of the cycle limit: (1+δ_{y,x})/N − 1/N² for odd N,
/// (1+δ_{y,x}+δ_{y,x+N/2})/N − 2/N² for even N.
pub fn cycle_limiting_closed_form(n: usize, x: usize) -> Result<Vec<f64>> {
    if n < 3 || x >= n {
        return invalid("need a cycle of length >= 3 and a vertex on it");
    }
    let nf = n as f64;
    Ok((0..n)
        .map(|y| {
            let d = (y + n - x) % n;
            if n % 2 == 1 {
                (1.0 + f64::from(u8::from(d == 0))) / nf - 1.0 / (nf * nf)
            } else {
                (1.0 + f64::from(u8::from(d == 0)) + f64::from(u8::from(d == n / 2))) / nf - 2.0 / (nf * nf)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    #[test]
    fn groups_by_tolerance() {
        assert_eq!(energy_groups(&[-2.0, -1.0, -1.0 + 1e-9, 0.5]), vec![vec![0], vec![1, 2], vec![3]]);
    }

    #[test]
    fn cycle_limits_match_closed_form() {
        for n in [5usize, 6, 7, 8] {
            let h = Hamiltonian::negative_adjacency(&Graph::cycle(n).unwrap()).unwrap();
            let pi = ctqw_limiting(&h, 1).unwrap();
            let cf = cycle_limiting_closed_form(n, 1).unwrap();
            for (a, b) in pi.probs().iter().zip(&cf) {
                assert!((a - b).abs() < 1e-12, "N={n}");
            }
            assert!((cf.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn simpson_error_estimate_is_small() {
        let h = Hamiltonian::negative_adjacency(&Graph::cycle(5).unwrap()).unwrap();
        let a = ctqw_time_average(&h, 0, 30.0).unwrap();
        assert!(a.step <= 0.05 / 2.0 + 1e-15);
        assert!(a.richardson_error < 1e-8);
        assert!((a.distribution.probs().iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}
