use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Result, WalkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostVariant {
    Subset,
    Clique,
    RecursiveClique,
}

impl CostVariant {
    pub const ALL: [CostVariant; 3] = [CostVariant::Subset, CostVariant::Clique, CostVariant::RecursiveClique];

    pub fn name(self) -> &'static str {
        match self {
            CostVariant::Subset => "subset",
            CostVariant::Clique => "clique",
            CostVariant::RecursiveClique => "recursive_clique",
        }
    }
}

impl fmt::Display for CostVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CostVariant {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset" => Ok(CostVariant::Subset),
            "clique" => Ok(CostVariant::Clique),
            "recursive_clique" | "recursive-clique" => Ok(CostVariant::RecursiveClique),
            _ => invalid(format!("unknown cost variant '{s}' (subset, clique, recursive_clique)")),
        }
    }
}

/// One summand of the query count: N^{a + bμ}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostTerm {
    pub name: &'static str,
    pub intercept: f64,
    pub slope: f64,
}

impl CostTerm {
    pub fn exponent(&self, mu: f64) -> f64 {
        self.intercept + self.slope * mu
    }
}

/// Per-operation oracle costs for a walk on q = N^μ subsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    pub k: usize,
    pub mu: f64,
    pub variant: CostVariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostBreakdown {
    pub n: f64,
    pub q: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub initialization: f64,
    pub shift: f64,
    pub coin: f64,
    pub phase_flip: f64,
    pub total: f64,
}

pub fn cost_model(k: usize, mu: f64, variant: CostVariant) -> Result<CostModel> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if !(0.0..=1.0).contains(&mu) {
        return invalid(format!("μ = {mu} outside [0, 1]"));
    }
    Ok(CostModel { k, mu, variant })
}

impl CostModel {
    /// Exponent of τ₂ ~ (N/q)^e.
    fn tau2_power(&self) -> f64 {
        match self.variant {
            CostVariant::RecursiveClique => (self.k as f64 - 1.0) / 2.0,
            _ => self.k as f64 / 2.0,
        }
    }

    /// Summands of the query complexity as powers of N.
    pub fn terms(&self) -> Vec<CostTerm> {
        let e = self.tau2_power();
        let k = self.k as f64;
        // τ₂·τ₁ ~ N^{e(1−μ) + μ/2}
        let walk = CostTerm { name: "walk", intercept: e, slope: 0.5 - e };
        match self.variant {
            CostVariant::Subset => vec![CostTerm { name: "initialization", intercept: 0.0, slope: 1.0 }, walk],
            CostVariant::Clique => vec![
                CostTerm { name: "initialization", intercept: 0.0, slope: 2.0 },
                CostTerm { name: "walk", intercept: e, slope: 1.5 - e },
            ],
            CostVariant::RecursiveClique => vec![
                CostTerm { name: "initialization", intercept: 0.0, slope: 2.0 },
                CostTerm { name: "walk", intercept: e, slope: 1.5 - e },
                CostTerm { name: "phase_flip", intercept: e + 0.5, slope: (k - 1.0) / k - e },
            ],
        }
    }

    /// Asymptotic exponent: the largest term at this μ.
    pub fn exponent(&self) -> f64 {
        self.terms().iter().map(|t| t.exponent(self.mu)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Query counts at a concrete N with q = N^μ and the τ constants of the rounded schedule (unrounded here).
    pub fn cost_at(&self, n: f64) -> Result<CostBreakdown> {
        if !(n >= 1.0) {
            return invalid(format!("N = {n} must be at least 1"));
        }
        let k = self.k as f64;
        let q = n.powf(self.mu);
        let tau1 = PI / 2.0 * (q / k).sqrt();
        let tau2 = PI / 4.0 * (n / q).powf(self.tau2_power());
        let (initialization, shift, phase_flip) = match self.variant {
            CostVariant::Subset => (q, 1.0, 0.0),
            CostVariant::Clique => (q * q, q, 0.0),
            CostVariant::RecursiveClique => (q * q, q, n.sqrt() * q.powf((k - 1.0) / k)),
        };
        let total = initialization + tau2 * (2.0 * tau1 * shift + phase_flip);
        Ok(CostBreakdown { n, q, tau1, tau2, initialization, shift, coin: 0.0, phase_flip, total })
    }
}

/// μ minimizing the exponent of a variant, found over the breakpoints of the piecewise-linear maximum.
/// Ties go to the smallest μ.
pub fn optimal_mu(k: usize, variant: CostVariant) -> Result<(f64, f64)> {
    let m = cost_model(k, 0.0, variant)?;
    let terms = m.terms();
    let mut candidates = vec![0.0, 1.0];
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if (a.slope - b.slope).abs() > 1e-15 {
                let mu = (b.intercept - a.intercept) / (a.slope - b.slope);
                if (0.0..=1.0).contains(&mu) {
                    candidates.push(mu);
                }
            }
        }
    }
    candidates.sort_by(f64::total_cmp);
    let mut best = (f64::NAN, f64::INFINITY);
    for mu in candidates {
        let e = CostModel { mu, ..m }.exponent();
        if e < best.1 - 1e-12 {
            best = (mu, e);
        }
    }
    Ok(best)
}

/// Closed-form optimal exponents: k/(k+1), 2k/(k+1), (5k−2)/(2k+4) at k = 3 and 2(k−1)/k beyond.
pub fn stated_optimal_exponent(k: usize, variant: CostVariant) -> Result<f64> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let kf = k as f64;
    Ok(match variant {
        CostVariant::Subset => kf / (kf + 1.0),
        CostVariant::Clique => 2.0 * kf / (kf + 1.0),
        CostVariant::RecursiveClique if k <= 3 => (5.0 * kf - 2.0) / (2.0 * kf + 4.0),
        CostVariant::RecursiveClique => 2.0 * (kf - 1.0) / kf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_optimum() {
        for k in 1..8 {
            let (mu, e) = optimal_mu(k, CostVariant::Subset).unwrap();
            let kf = k as f64;
            assert!((e - kf / (kf + 1.0)).abs() < 1e-12);
            if k > 1 {
                assert!((mu - kf / (kf + 1.0)).abs() < 1e-12);
            }
        }
        let m = cost_model(2, 2.0 / 3.0, CostVariant::Subset).unwrap();
        assert!((m.exponent() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn k1_is_flat_up_to_one_half() {
        for i in 0..=10 {
            let mu = 0.05 * i as f64;
            let m = cost_model(1, mu, CostVariant::Subset).unwrap();
            assert!((m.exponent() - 0.5).abs() < 1e-12, "μ = {mu}");
        }
        assert!(cost_model(1, 0.6, CostVariant::Subset).unwrap().exponent() > 0.5);
    }

    #[test]
    fn clique_exponent() {
        for k in 2..7 {
            let kf = k as f64;
            let stated = stated_optimal_exponent(k, CostVariant::Clique).unwrap();
            let at = cost_model(k, kf / (kf + 1.0), CostVariant::Clique).unwrap();
            assert!((at.exponent() - stated).abs() < 1e-12);
            let (_, e) = optimal_mu(k, CostVariant::Clique).unwrap();
            if k >= 3 {
                assert!((e - stated).abs() < 1e-12);
            }
        }
        // k = 2: q = 1 is Grover over the edges, N^1
        let (mu, e) = optimal_mu(2, CostVariant::Clique).unwrap();
        assert_eq!(mu, 0.0);
        assert!((e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recursive_triangle_is_1_3() {
        let (mu, e) = optimal_mu(3, CostVariant::RecursiveClique).unwrap();
        assert!((e - 1.3).abs() < 1e-12);
        assert!((mu - 0.6).abs() < 1e-12);
        assert!((stated_optimal_exponent(3, CostVariant::RecursiveClique).unwrap() - 1.3).abs() < 1e-15);
        // the balance of the two τ₂ terms gives (5k−2)/(2k+4) for every k ≥ 3; it meets 2(k−1)/k at k = 4
        let (_, e4) = optimal_mu(4, CostVariant::RecursiveClique).unwrap();
        assert!((e4 - 1.5).abs() < 1e-12);
        assert!((stated_optimal_exponent(4, CostVariant::RecursiveClique).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn numeric_cost_follows_exponent() {
        let m = cost_model(2, 2.0 / 3.0, CostVariant::Subset).unwrap();
        let a = m.cost_at(1e6).unwrap().total;
        let b = m.cost_at(1e9).unwrap().total;
        let slope = (b / a).log10() / 3.0;
        assert!((slope - 2.0 / 3.0).abs() < 1e-9, "{slope}");
        let c = m.cost_at(1e6).unwrap();
        assert!((c.total - (c.q + c.tau2 * 2.0 * c.tau1)).abs() < 1e-9 * c.total);
    }

    #[test]
    fn unknown_variant() {
        assert!("grover".parse::<CostVariant>().is_err());
        assert_eq!("recursive_clique".parse::<CostVariant>().unwrap(), CostVariant::RecursiveClique);
        assert!(cost_model(2, 1.5, CostVariant::Subset).is_err());
        assert!(cost_model(0, 0.5, CostVariant::Subset).is_err());
    }
}
