use nalgebra::DMatrix;

use crate::core_math::{eig_hermitian, ComplexMatrix, Distribution};
use crate::error::{invalid, Result, WalkError};
use crate::graphs::Graph;

/// Column-stochastic chain, stored as sparse columns: cols[i] = [(j, M_ji)].
#[derive(Debug, Clone)]
pub struct MarkovChain {
    cols: Vec<Vec<(usize, f64)>>,
    labels: Vec<i64>,
    graph: Option<Graph>,
}

#[derive(Debug, Clone)]
pub struct StationaryReport {
    /// π(j) = d(j)/2|E|
    pub pi: Distribution,
    /// eigenvalues of D^{-1/2} A D^{-1/2}, descending
    pub spectrum: Vec<f64>,
    pub bipartite: bool,
    pub connected: bool,
    /// ‖Mπ − π‖_∞
    pub residual: f64,
}

impl StationaryReport {
    /// The chain converges to π from every start.
    pub fn converges(&self) -> bool {
        self.connected && !self.bipartite
    }

    /// Largest |λ| other than the leading eigenvalue.
    pub fn slem(&self) -> f64 {
        self.spectrum.iter().skip(1).map(|x| x.abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingReport {
    pub time: usize,
    /// λ/(1−λ)·ln(1/(2ε)) with λ the second largest eigenvalue modulus, clamped at 0
    pub bound: f64,
    pub lambda2: f64,
}

#[derive(Debug, Clone)]
pub struct HittingReport {
    /// Σ_{m≤horizon} m·p_first(m)
    pub truncated_mean: f64,
    /// 1 − Σ_{m≤horizon} p_first(m)
    pub mass_beyond: f64,
    /// p_first(m) for m = 0..=horizon
    pub first_hit: Vec<f64>,
}

impl HittingReport {
    pub fn cumulative(&self, t: usize) -> f64 {
        self.first_hit.iter().take(t + 1).sum()
    }
}

pub const DEFAULT_T_MAX: usize = 100_000;

impl MarkovChain {
    /// Checks columns sum to 1 within 1e-12 and entries lie in [0, 1].
    pub fn from_columns(cols: Vec<Vec<(usize, f64)>>, labels: Vec<i64>) -> Result<Self> {
        let n = cols.len();
        if labels.len() != n {
            return Err(WalkError::DimensionMismatch { expected: n, got: labels.len() });
        }
        for (i, col) in cols.iter().enumerate() {
            let mut s = 0.0;
            for &(j, p) in col {
                if j >= n || !(0.0..=1.0).contains(&p) {
                    return Err(WalkError::NotStochastic(format!("column {i}")));
                }
                s += p;
            }
            if (s - 1.0).abs() > 1e-12 {
                return Err(WalkError::NotStochastic(format!("column {i} sums to {s}")));
            }
        }
        Ok(Self { cols, labels, graph: None })
    }

    pub fn from_dense(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(WalkError::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
        }
        let cols = (0..m.ncols())
            .map(|i| (0..m.nrows()).filter(|&j| m[(j, i)] != 0.0).map(|j| (j, m[(j, i)])).collect())
            .collect();
        Self::from_columns(cols, (0..m.ncols() as i64).collect())
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }
    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }
    pub fn columns(&self) -> &[Vec<(usize, f64)>] {
        &self.cols
    }

    pub fn with_labels(mut self, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(WalkError::DimensionMismatch { expected: self.n(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        for (i, col) in self.cols.iter().enumerate() {
            for &(j, p) in col {
                m[(j, i)] += p;
            }
        }
        m
    }

    pub fn step_vec(&self, p: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; p.len()];
        for (i, col) in self.cols.iter().enumerate() {
            let pi = p[i];
            if pi == 0.0 {
                continue;
            }
            for &(j, w) in col {
                out[j] += w * pi;
            }
        }
        out
    }

    pub fn evolve(&self, p0: &Distribution, m: usize) -> Result<Distribution> {
        if p0.len() != self.n() {
            return Err(WalkError::DimensionMismatch { expected: self.n(), got: p0.len() });
        }
        let mut p = p0.probs().to_vec();
        for _ in 0..m {
            p = self.step_vec(&p);
        }
        Distribution::new(self.labels.clone(), p)
    }

    pub fn distribution(&self, p: Vec<f64>) -> Result<Distribution> {
        Distribution::new(self.labels.clone(), p)
    }

    pub fn delta(&self, vertex: usize) -> Result<Distribution> {
        let mut p = vec![0.0; self.n()];
        p[vertex] = 1.0;
        self.distribution(p)
    }

    pub fn stationary_and_limit(&self) -> Result<StationaryReport> {
        let g = self
            .graph
            .as_ref()
            .ok_or_else(|| WalkError::InvalidParameter("chain has no underlying graph".into()))?;
        let n = g.n();
        let total: usize = (0..n).map(|v| g.degree(v)).sum();
        let pi: Vec<f64> = (0..n).map(|v| g.degree(v) as f64 / total as f64).collect();
        let mp = self.step_vec(&pi);
        let residual = mp.iter().zip(&pi).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let a = g.adjacency_real();
        let q = DMatrix::from_fn(n, n, |i, j| {
            a[(i, j)] / ((g.degree(i) * g.degree(j)) as f64).sqrt()
        });
        let eig = eig_hermitian(&ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)].into()))?;
        let mut spectrum = eig.values;
        spectrum.reverse();
        Ok(StationaryReport {
            pi: Distribution::new(self.labels.clone(), pi)?,
            spectrum,
            bipartite: g.is_bipartite(),
            connected: g.is_connected(),
            residual,
        })
    }

    /// Smallest T with tvd(p(t), π) ≤ ε for every t in [T, t_max].
    pub fn mixing_time(&self, p0: &Distribution, eps: f64, t_max: usize) -> Result<MixingReport> {
        let rep = self.stationary_and_limit()?;
        if !rep.converges() {
            return Err(WalkError::NoConvergence("chain is disconnected or bipartite".into()));
        }
        let lambda2 = rep.slem();
        let bound = if eps >= 0.5 || lambda2 >= 1.0 {
            0.0
        } else {
            (lambda2 / (1.0 - lambda2) * (1.0 / (2.0 * eps)).ln()).max(0.0)
        };
        let pi = rep.pi.probs().to_vec();
        let dist = |p: &[f64]| p.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum::<f64>();
        let mut p = p0.probs().to_vec();
        let mut last_bad: Option<usize> = None;
        for t in 0..=t_max {
            if dist(&p) > eps {
                last_bad = Some(t);
            }
            if t < t_max {
                p = self.step_vec(&p);
            }
        }
        match last_bad {
            Some(t) if t == t_max => Err(WalkError::NoConvergence(format!("tvd above {eps} at T_max={t_max}"))),
            Some(t) => Ok(MixingReport { time: t + 1, bound, lambda2 }),
            None => Ok(MixingReport { time: 0, bound, lambda2 }),
        }
    }

    /// First-hit statistics from an absorbing copy of the chain.
    pub fn hitting_time(&self, start: usize, target: usize, horizon: usize) -> Result<HittingReport> {
        let n = self.n();
        if start >= n || target >= n {
            return invalid("vertex out of range");
        }
        if horizon < 1 {
            return invalid("horizon must be at least 1");
        }
        let mut first_hit = vec![0.0; horizon + 1];
        if start == target {
            first_hit[0] = 1.0;
            return Ok(HittingReport { truncated_mean: 0.0, mass_beyond: 0.0, first_hit });
        }
        let mut p = vec![0.0; n];
        p[start] = 1.0;
        let mut mean = 0.0;
        let mut hit = 0.0;
        for (m, slot) in first_hit.iter_mut().enumerate().skip(1) {
            p = self.step_vec(&p);
            let h = p[target];
            p[target] = 0.0; // absorbed
            *slot = h;
            mean += m as f64 * h;
            hit += h;
        }
        Ok(HittingReport { truncated_mean: mean, mass_beyond: (1.0 - hit).max(0.0), first_hit })
    }
}

/// M_ji = 1/d(i) for every neighbour j of i (a loop counts once).
pub fn unbiased_chain(g: &Graph) -> Result<MarkovChain> {
    let mut cols = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let d = g.degree(v);
        if d == 0 {
            return invalid(format!("vertex {v} is isolated"));
        }
        let w = 1.0 / d as f64;
        let mut col: Vec<(usize, f64)> = g.neighbors(v).iter().map(|&u| (u, w)).collect();
        if g.has_loop(v) {
            col.push((v, w));
        }
        cols.push(col);
    }
    let mut c = MarkovChain::from_columns(cols, (0..g.n() as i64).collect())?;
    c.graph = Some(g.clone());
    Ok(c)
}

/// Unbiased walk on the line, positions −(m+2)..=m+2, enough for m steps from 0.
pub fn line_chain(m: usize) -> Result<MarkovChain> {
    let half = m + 2;
    let g = Graph::line(2 * half + 1)?;
    let labels = (0..g.n() as i64).map(|i| i - half as i64).collect();
    unbiased_chain(&g)?.with_labels(labels)
}

/// Index of position x in `line_chain(m)`.
pub fn line_index(m: usize, x: i64) -> usize {
    (x + (m + 2) as i64) as usize
}

/// Expected hitting time from a restart experiment with success probability p per run.
pub fn restart_estimate(p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return invalid("success probability must lie in (0, 1]");
    }
    Ok(1.0 / p)
}

/// Probability of ever reaching 0 from 1 when stepping away from 0 with probability p_right.
pub fn absorbing_hit_prob_line(p_right: f64) -> Result<f64> {
    if !(p_right > 0.0 && p_right < 1.0) {
        return invalid("p must lie strictly between 0 and 1");
    }
    Ok(((1.0 - p_right) / p_right).min(1.0))
}

/// Exact first-return mass for the unbiased half-line walk 1 → 0 after `steps`.
pub fn line_absorption_cumulative(steps: usize) -> Result<f64> {
    let c = unbiased_chain(&Graph::line(steps + 3)?)?;
    Ok(c.hitting_time(1, 0, steps)?.cumulative(steps))
}

/// Gaussian approximation 2/√(2πm)·exp(−x²/2m) at positions of matching parity.
pub fn drunkard_pdf(m: usize, x: i64) -> f64 {
    if (m as i64 + x).rem_euclid(2) != 0 {
        return 0.0;
    }
    let mf = m as f64;
    2.0 / (2.0 * std::f64::consts::PI * mf).sqrt() * (-(x as f64).powi(2) / (2.0 * mf)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_math::tvd;
    use crate::graphs::{build_graph, GraphFamily};

    fn binom_line(m: usize) -> Vec<(i64, f64)> {
        // exact binomial via Pascal recursion in log-free form
        let mut row = vec![1.0f64];
        for _ in 0..m {
            let mut next = vec![0.0; row.len() + 1];
            for (i, &v) in row.iter().enumerate() {
                next[i] += v / 2.0;
                next[i + 1] += v / 2.0;
            }
            row = next;
        }
        row.iter().enumerate().map(|(k, &p)| (2 * k as i64 - m as i64, p)).collect()
    }

    #[test]
    fn cycle_transitions() {
        let c = unbiased_chain(&Graph::cycle(4).unwrap()).unwrap();
        let m = c.matrix();
        for i in 0..4 {
            assert_eq!(m[((i + 1) % 4, i)], 0.5);
            assert_eq!(m[((i + 3) % 4, i)], 0.5);
            assert_eq!(m.column(i).sum(), 1.0);
        }
        let s = unbiased_chain(&Graph::star(5).unwrap()).unwrap().matrix();
        for j in 1..=5 {
            assert!((s[(j, 0)] - 0.2).abs() < 1e-15);
        }
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Graph::from_edges(3, &[(0, 1)], &[]).unwrap();
        assert!(unbiased_chain(&g).is_err());
    }

    #[test]
    fn line_two_steps() {
        let c = line_chain(2).unwrap();
        let p = c.evolve(&c.delta(line_index(2, 0)).unwrap(), 2).unwrap();
        assert_eq!(p.get(-2), 0.25);
        assert_eq!(p.get(0), 0.5);
        assert_eq!(p.get(2), 0.25);
        let same = c.evolve(&c.delta(line_index(2, 0)).unwrap(), 0).unwrap();
        assert_eq!(same.get(0), 1.0);
    }

    #[test]
    fn line_against_binomial_and_gaussian() {
        let m = 100;
        let c = line_chain(m).unwrap();
        let p = c.evolve(&c.delta(line_index(m, 0)).unwrap(), m).unwrap();
        let bin = binom_line(m);
        let mut err: f64 = 0.0;
        let mut gauss_tvd = 0.0;
        for &(x, q) in &bin {
            err = err.max((p.get(x) - q).abs());
        }
        for &x in p.labels() {
            gauss_tvd += (p.get(x) - drunkard_pdf(m, x)).abs();
        }
        assert!(err < 1e-15);
        assert!(gauss_tvd <= 0.02, "{gauss_tvd}");
        for &x in p.labels() {
            if (x + m as i64) % 2 != 0 {
                assert_eq!(p.get(x), 0.0);
            }
        }
    }

    #[test]
    fn stationary_examples() {
        let rep = unbiased_chain(&Graph::star(4).unwrap()).unwrap().stationary_and_limit().unwrap();
        assert_eq!(rep.pi.probs()[0], 0.5);
        assert_eq!(rep.pi.probs()[1], 0.125);
        assert!(rep.bipartite);
        let rep = unbiased_chain(&Graph::cycle(5).unwrap()).unwrap().stationary_and_limit().unwrap();
        assert!(rep.pi.probs().iter().all(|&p| (p - 0.2).abs() < 1e-15));
        assert!(rep.converges());
        assert!(rep.spectrum.iter().all(|&l| (-1.0 - 1e-12..=1.0 + 1e-12).contains(&l)));
        assert!((rep.spectrum[0] - 1.0).abs() < 1e-12 && rep.spectrum[1] < 1.0 - 1e-6);
        let b = unbiased_chain(&Graph::cycle(6).unwrap()).unwrap().stationary_and_limit().unwrap();
        assert!(b.bipartite && (b.spectrum[5] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_converges() {
        let c = unbiased_chain(&Graph::cycle(5).unwrap()).unwrap();
        let p0 = c.distribution(vec![0.4, 0.1, 0.3, 0.15, 0.05]).unwrap();
        let p = c.evolve(&p0, 10_000).unwrap();
        let pi = c.stationary_and_limit().unwrap().pi;
        assert!(tvd(&p, &pi).unwrap() <= 1e-6);
    }

    #[test]
    fn mixing_examples() {
        let c = unbiased_chain(&Graph::complete(8, true).unwrap()).unwrap();
        let r = c.mixing_time(&c.delta(0).unwrap(), 0.01, 1000).unwrap();
        assert!(r.time <= 10);
        assert_eq!(c.mixing_time(&c.delta(0).unwrap(), 2.0, 1000).unwrap().time, 0);
        let c7 = unbiased_chain(&Graph::cycle(7).unwrap()).unwrap();
        let r = c7.mixing_time(&c7.delta(0).unwrap(), 0.01, DEFAULT_T_MAX).unwrap();
        assert!(r.bound <= r.time as f64, "{r:?}");
        let c6 = unbiased_chain(&Graph::cycle(6).unwrap()).unwrap();
        assert!(c6.mixing_time(&c6.delta(0).unwrap(), 0.01, 100).is_err());
    }

    #[test]
    fn hitting_examples() {
        let c = unbiased_chain(&Graph::cycle(5).unwrap()).unwrap();
        let r = c.hitting_time(2, 2, 10).unwrap();
        assert_eq!((r.truncated_mean, r.mass_beyond), (0.0, 0.0));
        assert_eq!(restart_estimate(0.25).unwrap(), 4.0);
        // 1 → 0 on the line: truncated mean keeps growing, hit mass → 1
        let line = unbiased_chain(&Graph::line(10_003).unwrap()).unwrap();
        let r = line.hitting_time(1, 0, 10_000).unwrap();
        let means: Vec<f64> = [100usize, 1000, 10_000]
            .iter()
            .map(|&h| r.first_hit.iter().take(h + 1).enumerate().map(|(m, p)| m as f64 * p).sum())
            .collect();
        assert!(means[0] < means[1] && means[1] < means[2]);
        assert!(means[2] > 2.5 * means[1]);
        assert!(r.cumulative(100) < r.cumulative(1000) && r.cumulative(10_000) > 0.99);
        // R L L is the only three-step first return
        let p3 = r.first_hit[3];
        assert!((p3 - 1.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn absorbing_probability() {
        assert_eq!(absorbing_hit_prob_line(0.5).unwrap(), 1.0);
        assert_eq!(absorbing_hit_prob_line(1.0 / 3.0).unwrap(), 1.0);
        assert!((absorbing_hit_prob_line(2.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(absorbing_hit_prob_line(0.0).is_err() && absorbing_hit_prob_line(1.0).is_err());
    }

    #[test]
    fn absorbing_probability_monte_carlo() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &(p, expect) in &[(1.0 / 3.0, 1.0), (2.0 / 3.0, 0.5)] {
            let trials = 1_000_000;
            let mut hits = 0;
            for _ in 0..trials {
                let mut x = 1i64;
                // a walker drifting away past 60 returns with probability ≤ (1/2)^60
                for _ in 0..10_000 {
                    x += if rng.gen_bool(p) { 1 } else { -1 };
                    if x == 0 || x > 60 {
                        break;
                    }
                }
                if x == 0 {
                    hits += 1;
                }
            }
            let est = hits as f64 / trials as f64;
            assert!((est - expect).abs() < 0.003, "p={p}: {est}");
        }
    }

    #[test]
    fn bipartite_detected_on_family() {
        let g = build_graph(&GraphFamily::CompleteBipartite(2, 2)).unwrap();
        assert!(unbiased_chain(&g).unwrap().stationary_and_limit().unwrap().bipartite);
    }
}
