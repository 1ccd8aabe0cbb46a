use std::f64::consts::SQRT_2;
use std::str::FromStr;

use crate::core_math::{ComplexVector, C64};
use crate::error::{invalid, Result, WalkError};
use crate::graphs::{build_graph, Graph, GraphFamily};

use super::hamiltonian::{CtqwPropagator, Hamiltonian, WeightedLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GluedKind {
    /// two trees sharing their leaves: 2n − 1 columns
    Plain,
    /// leaves joined by an alternating cycle: 2n columns
    Cycle,
}

impl FromStr for GluedKind {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(GluedKind::Plain),
            "cycle" => Ok(GluedKind::Cycle),
            _ => invalid(format!("unknown glued-trees kind '{s}' (plain, cycle)")),
        }
    }
}

/// Largest depth for which the full graph is simulated.
pub const GLUED_FULL_MAX: usize = 8;

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// max over the time grid of |⟨ψ_k|e^{−iHt}|ENTRANCE⟩ − reduced amplitude k|
    pub max_deviation: f64,
    /// max over the grid of the probability outside the column states
    pub max_leakage: f64,
    pub times: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct GluedReduction {
    pub kind: GluedKind,
    pub n: usize,
    pub line: WeightedLine,
    /// weights read off the full graph: edges between columns / √(n_k n_{k+1})
    pub graph_weights: Vec<f64>,
    /// only for n ≤ GLUED_FULL_MAX
    pub report: Option<EquivalenceReport>,
}

/// The column-state line: √2 on every link, 2 on the middle link of the cycle-glued graph.
pub fn glued_line(kind: GluedKind, n: usize) -> Result<WeightedLine> {
    if n < 2 {
        return invalid("glued trees need depth n >= 2");
    }
    let weights = match kind {
        GluedKind::Plain => vec![SQRT_2; 2 * n - 2],
        GluedKind::Cycle => (0..2 * n - 1).map(|k| if k == n - 1 { 2.0 } else { SQRT_2 }).collect(),
    };
    WeightedLine::new(weights)
}

pub fn glued_graph(kind: GluedKind, n: usize, seed: u64) -> Result<Graph> {
    match kind {
        GluedKind::Plain => build_graph(&GraphFamily::GluedTrees(n)),
        GluedKind::Cycle => build_graph(&GraphFamily::GluedTreesCycle { n, seed }),
    }
}

fn column_amplitudes(cols: &[Vec<usize>], psi: &ComplexVector) -> Vec<C64> {
    cols.iter()
        .map(|c| c.iter().map(|&v| psi[v]).sum::<C64>() / (c.len() as f64).sqrt())
        .collect()
}

/// Reduced line, the weights implied by the graph, and the full-vs-reduced check on t ∈ [0, 4n].
pub fn glued_trees_reduce(kind: GluedKind, n: usize, seed: u64) -> Result<GluedReduction> {
    let line = glued_line(kind, n)?;
    let g = glued_graph(kind, n, seed)?;
    let cols = g.column_sets().ok_or_else(|| WalkError::InvalidState("graph has no columns".into()))?;
    let colv = g.columns().expect("glued trees carry columns");
    let mut graph_weights = vec![0.0; cols.len() - 1];
    for &(u, v) in g.edges() {
        let (a, b) = (colv[u].min(colv[v]), colv[u].max(colv[v]));
        if b == a + 1 {
            graph_weights[a] += 1.0;
        }
    }
    for (k, w) in graph_weights.iter_mut().enumerate() {
        *w /= ((cols[k].len() * cols[k + 1].len()) as f64).sqrt();
    }
    let report = if n <= GLUED_FULL_MAX {
        let full = CtqwPropagator::new(&Hamiltonian::negative_adjacency(&g)?);
        let reduced = CtqwPropagator::new(&Hamiltonian::weighted_line(&line)?);
        let times: Vec<f64> = (0..=40 * n).map(|i| i as f64 * 0.1).collect();
        let mut max_deviation: f64 = 0.0;
        let mut max_leakage: f64 = 0.0;
        for &t in &times {
            let a = column_amplitudes(&cols, &full.column(t, 0));
            let b = reduced.column(t, 0);
            for (x, y) in a.iter().zip(b.iter()) {
                max_deviation = max_deviation.max((x - y).norm());
            }
            let inside: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            max_leakage = max_leakage.max((1.0 - inside).abs());
        }
        Some(EquivalenceReport { max_deviation, max_leakage, times })
    } else {
        None
    };
    Ok(GluedReduction { kind, n, line, graph_weights, report })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Traversal {
    pub time: f64,
    pub probability: f64,
}

/// Largest |⟨EXIT column|e^{−iHt}|ENTRANCE⟩|² on the reduced line over t = 0, dt, …, t_max.
pub fn glued_traversal(kind: GluedKind, n: usize, t_max: f64, dt: f64) -> Result<Traversal> {
    if !(dt > 0.0 && t_max >= 0.0) {
        return invalid("need dt > 0 and t_max >= 0");
    }
    let line = glued_line(kind, n)?;
    let p = CtqwPropagator::new(&Hamiltonian::weighted_line(&line)?);
    let exit = line.nodes() - 1;
    let mut best = Traversal { time: 0.0, probability: 0.0 };
    let steps = (t_max / dt).floor() as usize;
    for i in 0..=steps {
        let t = i as f64 * dt;
        let pr = p.column(t, 0)[exit].norm_sqr();
        if pr > best.probability {
            best = Traversal { time: t, probability: pr };
        }
    }
    Ok(best)
}
