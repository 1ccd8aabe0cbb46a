use std::f64::consts::PI;

use crate::core_math::{cr, ComplexMatrix, ComplexVector, QuantumState, C64};
use crate::error::{invalid, Result, WalkError};
use crate::graphs::{build_graph, Graph, GraphFamily};

use super::walk::{LocalCoin, ScatteringWalk};

/// Orthonormal orbit vectors |w_j⟩ in the full edge space.
#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub vectors: Vec<ComplexVector>,
}

impl InvariantBasis {
    /// |w⟩ = uniform superposition over each listed set of edge states
    pub fn from_orbits(dim: usize, orbits: &[Vec<usize>]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            if orbit.is_empty() {
                return Err(WalkError::Degenerate("empty orbit".into()));
            }
            let mut v = ComplexVector::zeros(dim);
            let a = cr(1.0 / (orbit.len() as f64).sqrt());
            for &i in orbit {
                v[i] = a;
            }
            vectors.push(v);
        }
        Ok(Self { vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn gram_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dotc(b) - cr(target)).norm());
            }
        }
        worst
    }

    /// Reduced-space coordinates ⟨w_j|ψ⟩.
    pub fn project(&self, v: &ComplexVector) -> ComplexVector {
        ComplexVector::from_iterator(self.len(), self.vectors.iter().map(|w| w.dotc(v)))
    }

    pub fn lift(&self, c: &ComplexVector) -> ComplexVector {
        let mut v = ComplexVector::zeros(self.vectors[0].len());
        for (w, a) in self.vectors.iter().zip(c.iter()) {
            v += w * *a;
        }
        v
    }

    /// Matrix ⟨w_i|U|w_j⟩ from the full walk.
    pub fn reduce(&self, walk: &ScatteringWalk) -> ComplexMatrix {
        let n = self.len();
        let images: Vec<ComplexVector> = self.vectors.iter().map(|w| walk.step_vec(w)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| self.vectors[i].dotc(&images[j]))
    }

    /// Largest norm of U|w_j⟩ outside span{w}.
    pub fn leakage(&self, walk: &ScatteringWalk) -> f64 {
        self.vectors
            .iter()
            .map(|w| {
                let img = walk.step_vec(w);
                (&img - self.lift(&self.project(&img))).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor().max(0.0) as usize
}

fn evolve_probs(u: &ComplexMatrix, v0: &ComplexVector, m: usize) -> Vec<Vec<f64>> {
    let mut v = v0.clone();
    let mut out = Vec::with_capacity(m + 1);
    for t in 0..=m {
        if t > 0 {
            v = u * &v;
        }
        out.push(v.iter().map(|z| z.norm_sqr()).collect());
    }
    out
}

/// Complete graph with targets 0..k: SQW with reflective coins on targets, Grover elsewhere.
pub fn complete_graph_walk(n: usize, k: usize, phase: f64) -> Result<ScatteringWalk> {
    let g = Graph::complete(n, false)?;
    let coins: Vec<LocalCoin> = (0..n).map(|v| if v < k { LocalCoin::Reflective { phase } } else { LocalCoin::Grover }).collect();
    ScatteringWalk::build(&g, &coins)
}

#[derive(Debug, Clone)]
pub struct CompleteReduction {
    pub q: f64,
    pub s: f64,
    /// 4×4, or 3×3 when k = 1
    pub matrix: ComplexMatrix,
    /// reduced coordinates of the uniform edge superposition
    pub initial: ComplexVector,
}

impl CompleteReduction {
    /// |w1|², |w2|², |w4|²: the walker sits on an edge that touches a target
    pub fn success(c: &ComplexVector) -> f64 {
        c.iter().enumerate().filter(|(i, _)| *i != 2).map(|(_, z)| z.norm_sqr()).sum()
    }
}

pub fn reduce_complete_graph(n: usize, k: usize, phase: f64) -> Result<CompleteReduction> {
    if n < 3 || k == 0 || k >= n {
        return invalid("need N >= 3 and 1 <= k < N");
    }
    let nf = n as f64;
    let kf = k as f64;
    let q = -1.0 + 2.0 * kf / (nf - 1.0);
    let s = (1.0 - q * q).max(0.0).sqrt();
    let e = C64::from_polar(1.0, phase);
    let dim = if k == 1 { 3 } else { 4 };
    let mut u = ComplexMatrix::zeros(dim, dim);
    u[(0, 1)] = cr(q);
    u[(0, 2)] = cr(s);
    u[(1, 0)] = e;
    u[(2, 1)] = cr(s);
    u[(2, 2)] = cr(-q);
    if dim == 4 {
        u[(3, 3)] = e;
    }
    let norm = (nf * (nf - 1.0)).sqrt();
    let mut init = vec![
        cr((kf * (nf - kf)).sqrt() / norm),
        cr((kf * (nf - kf)).sqrt() / norm),
        cr(((nf - kf) * (nf - kf - 1.0)).sqrt() / norm),
    ];
    if dim == 4 {
        init.push(cr((kf * (kf - 1.0)).sqrt() / norm));
    }
    Ok(CompleteReduction { q, s, matrix: u, initial: ComplexVector::from_vec(init) })
}

/// Orbit vectors w1 (normal → target), w2 (target → normal), w3 (normal → normal), w4 (target → target).
pub fn complete_graph_basis(walk: &ScatteringWalk, k: usize) -> Result<InvariantBasis> {
    let mut orbits = vec![vec![], vec![], vec![], vec![]];
    for (i, &(a, b)) in walk.basis().edges().iter().enumerate() {
        let slot = match (a < k, b < k) {
            (false, true) => 0,
            (true, false) => 1,
            (false, false) => 2,
            (true, true) => 3,
        };
        orbits[slot].push(i);
    }
    if k == 1 {
        orbits.pop();
    }
    InvariantBasis::from_orbits(walk.dim(), &orbits)
}

/// tan θ = √(k(2N−k−2)) / (N−k−1)
pub fn complete_graph_theta(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    (kf * (2.0 * nf - kf - 2.0)).sqrt().atan2(nf - kf - 1.0)
}

/// m̃ = round(π/(2√2) · √(N/k))
pub fn complete_graph_auto_steps(n: usize, k: usize) -> usize {
    round_half_up(PI / (2.0 * 2f64.sqrt()) * (n as f64 / k as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub steps: usize,
    pub success: f64,
    /// argmax of the success probability over ±20% of the step count
    pub best_steps: usize,
    pub best_success: f64,
    /// index t: probability on each reduced basis vector after t steps
    pub trajectory: Vec<Vec<f64>>,
}

fn best_in_window(center: usize, probs: &[f64]) -> (usize, f64) {
    let lo = ((center as f64) * 0.8).floor() as usize;
    let hi = (((center as f64) * 1.2).ceil() as usize).min(probs.len() - 1);
    let mut best = (lo, probs[lo]);
    for (t, &p) in probs.iter().enumerate().take(hi + 1).skip(lo) {
        if p > best.1 {
            best = (t, p);
        }
    }
    best
}

/// φ = π search from the uniform edge superposition; `steps = None` uses m̃.
pub fn complete_graph_search(n: usize, k: usize, steps: Option<usize>) -> Result<SearchOutcome> {
    let red = reduce_complete_graph(n, k, PI)?;
    let m = steps.unwrap_or_else(|| complete_graph_auto_steps(n, k));
    let horizon = ((m as f64) * 1.2).ceil() as usize + 1;
    let traj = evolve_probs(&red.matrix, &red.initial, horizon.max(m));
    let succ: Vec<f64> = traj.iter().map(|p| p.iter().enumerate().filter(|(i, _)| *i != 2).map(|(_, x)| x).sum()).collect();
    let (best_steps, best_success) = best_in_window(m, &succ);
    Ok(SearchOutcome { steps: m, success: succ[m], best_steps, best_success, trajectory: traj[..=m].to_vec() })
}

/// Δ = √(2(1−r₀)/(3−r₀))
pub fn star_delta(r0: f64) -> f64 {
    (2.0 * (1.0 - r0) / (3.0 - r0)).sqrt()
}

/// opt = π Δ⁻¹ √(N/8), rounded half up
pub fn star_opt_steps(n: usize, r0: f64) -> usize {
    round_half_up(PI / star_delta(r0) * (n as f64 / 8.0).sqrt())
}

/// Star with N spikes, extra edge 1–2; centre Grover (t = 2/N), spikes reflect, 1 and 2 two-port.
pub fn star_graph_walk(n: usize, r0: f64) -> Result<ScatteringWalk> {
    let g = build_graph(&GraphFamily::StarExtraEdge(n))?;
    let coins: Vec<LocalCoin> = (0..=n).map(|v| if v == 1 || v == 2 { LocalCoin::TwoPort { r0 } } else { LocalCoin::Grover }).collect();
    ScatteringWalk::build(&g, &coins)
}

/// w1 = |01⟩+|02⟩, w2 = |10⟩+|20⟩, w3 = Σ_{j≥3}|0j⟩, w4 = Σ_{j≥3}|j0⟩, w5 = |12⟩+|21⟩, normalized
pub fn star_graph_basis(walk: &ScatteringWalk) -> Result<InvariantBasis> {
    let mut orbits = vec![vec![]; 5];
    for (i, &(a, b)) in walk.basis().edges().iter().enumerate() {
        let slot = match (a, b) {
            (0, 1) | (0, 2) => 0,
            (1, 0) | (2, 0) => 1,
            (0, _) => 2,
            (_, 0) => 3,
            _ => 4,
        };
        orbits[slot].push(i);
    }
    InvariantBasis::from_orbits(walk.dim(), &orbits)
}

/// Reduced 5×5 step and the initial state (Σ_j |0,j⟩ − |j,0⟩)/√(2N).
pub fn star_reduced(n: usize, r0: f64) -> Result<(ComplexMatrix, ComplexVector)> {
    if n < 3 {
        return invalid("star needs at least 3 spikes");
    }
    if !(-1.0..1.0).contains(&r0) {
        return if r0 == 1.0 {
            Err(WalkError::Degenerate("r0 = 1 makes the extra edge invisible".into()))
        } else {
            invalid("r0 must lie in [-1, 1)")
        };
    }
    let nf = n as f64;
    let t = 2.0 / nf;
    let t0 = (1.0 - r0 * r0).sqrt();
    let a = t * (2.0 * (nf - 2.0)).sqrt();
    let mut u = ComplexMatrix::zeros(5, 5);
    u[(1, 0)] = cr(r0);
    u[(4, 0)] = cr(t0);
    u[(0, 1)] = cr(2.0 * t - 1.0);
    u[(2, 1)] = cr(a);
    u[(3, 2)] = cr(1.0);
    u[(0, 3)] = cr(a);
    u[(2, 3)] = cr(t * (nf - 2.0) - 1.0);
    u[(1, 4)] = cr(t0);
    u[(4, 4)] = cr(-r0);
    let b = 1.0 / nf.sqrt();
    let c = ((nf - 2.0) / (2.0 * nf)).sqrt();
    Ok((u, ComplexVector::from_vec(vec![cr(b), cr(-b), cr(c), cr(-c), cr(0.0)])))
}

pub fn star_initial_state(walk: &ScatteringWalk, n: usize) -> Result<QuantumState> {
    let mut v = ComplexVector::zeros(walk.dim());
    let a = cr(1.0 / (2.0 * n as f64).sqrt());
    for j in 1..=n {
        v[walk.basis().index_of(0, j).ok_or(WalkError::LabelMismatch)?] = a;
        v[walk.basis().index_of(j, 0).ok_or(WalkError::LabelMismatch)?] = -a;
    }
    QuantumState::new(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarOutcome {
    pub delta: f64,
    pub opt_steps: usize,
    /// index t: |⟨w_j|ψ_t⟩|², j = 1..5
    pub trajectory: Vec<[f64; 5]>,
    /// mass on w1, w2, w5 at opt
    pub triangle: f64,
    pub best_steps: usize,
    pub best_triangle: f64,
}

pub fn star_graph_search(n: usize, r0: f64) -> Result<StarOutcome> {
    let (u, v0) = star_reduced(n, r0)?;
    let opt = star_opt_steps(n, r0);
    let horizon = ((opt as f64) * 1.2).ceil() as usize + 1;
    let traj: Vec<[f64; 5]> = evolve_probs(&u, &v0, horizon)
        .into_iter()
        .map(|p| [p[0], p[1], p[2], p[3], p[4]])
        .collect();
    let tri: Vec<f64> = traj.iter().map(|p| p[0] + p[1] + p[4]).collect();
    let (best_steps, best_triangle) = best_in_window(opt, &tri);
    Ok(StarOutcome {
        delta: star_delta(r0),
        opt_steps: opt,
        triangle: tri[opt],
        trajectory: traj[..=opt].to_vec(),
        best_steps,
        best_triangle,
    })
}

/// "step,|w1|²,|w2|²,…"
pub fn trajectory_csv(traj: &[Vec<f64>]) -> String {
    let width = traj.first().map_or(0, |r| r.len());
    let mut s = String::from("step");
    for j in 1..=width {
        s.push_str(&format!(",|w{j}|²"));
    }
    s.push('\n');
    for (t, row) in traj.iter().enumerate() {
        s.push_str(&t.to_string());
        for x in row {
            s.push_str(&format!(",{x:.16e}"));
        }
        s.push('\n');
    }
    s
}
