use std::collections::HashMap;
use std::fmt::Write as _;

use super::linalg::NORM_TOL;
use crate::error::{Result, WalkError};

/// Probability distribution over integer-labelled outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    labels: Vec<i64>,
    probs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistStats {
    pub mean: f64,
    pub abs_mean: f64,
    pub variance: f64,
    /// ⟨((x − ⟨x⟩)/⟨x²⟩)³⟩, zero when ⟨x²⟩ = 0
    pub skewness: f64,
    pub entropy: f64,
}

impl Distribution {
    pub fn new(labels: Vec<i64>, probs: Vec<f64>) -> Result<Self> {
        if labels.len() != probs.len() {
            return Err(WalkError::DimensionMismatch { expected: labels.len(), got: probs.len() });
        }
        if probs.iter().any(|p| !p.is_finite() || *p < -NORM_TOL) {
            return Err(WalkError::InvalidState("negative or non-finite probability".into()));
        }
        let s: f64 = probs.iter().sum();
        if (s - 1.0).abs() > NORM_TOL {
            return Err(WalkError::InvalidState(format!("probabilities sum to {s}")));
        }
        let probs = probs.into_iter().map(|p| p.max(0.0)).collect();
        Ok(Self { labels, probs })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(labels: Vec<i64>, weights: Vec<f64>) -> Result<Self> {
        let s: f64 = weights.iter().sum();
        if !(s > 0.0) {
            return Err(WalkError::InvalidState("weights sum to zero".into()));
        }
        Self::new(labels, weights.into_iter().map(|w| w / s).collect())
    }

    pub fn delta(labels: Vec<i64>, at: i64) -> Result<Self> {
        let probs = labels.iter().map(|&l| if l == at { 1.0 } else { 0.0 }).collect();
        Self::new(labels, probs)
    }

    pub fn uniform(labels: Vec<i64>) -> Result<Self> {
        let n = labels.len() as f64;
        let probs = vec![1.0 / n; labels.len()];
        Self::new(labels, probs)
    }

    /// Labels 0..n.
    pub fn indexed(probs: Vec<f64>) -> Result<Self> {
        Self::new((0..probs.len() as i64).collect(), probs)
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, label: i64) -> f64 {
        self.labels.iter().position(|&l| l == label).map_or(0.0, |i| self.probs[i])
    }

    pub fn stats(&self) -> DistStats {
        dist_stats(self)
    }

    pub fn entropy(&self) -> f64 {
        self.probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("label,probability\n");
        for (l, p) in self.labels.iter().zip(&self.probs) {
            let _ = writeln!(s, "{l},{p:.16e}");
        }
        s
    }
}

/// Σ_j |p(j) − q(j)|, no factor 1/2.
pub fn tvd(p: &Distribution, q: &Distribution) -> Result<f64> {
    if p.labels == q.labels {
        return Ok(p.probs.iter().zip(&q.probs).map(|(a, b)| (a - b).abs()).sum());
    }
    if p.len() != q.len() {
        return Err(WalkError::LabelMismatch);
    }
    let qm: HashMap<i64, f64> = q.labels.iter().copied().zip(q.probs.iter().copied()).collect();
    if qm.len() != q.len() {
        return Err(WalkError::LabelMismatch);
    }
    let mut s = 0.0;
    for (l, a) in p.labels.iter().zip(&p.probs) {
        match qm.get(l) {
            Some(b) => s += (a - b).abs(),
            None => return Err(WalkError::LabelMismatch),
        }
    }
    Ok(s)
}

pub fn dist_stats(p: &Distribution) -> DistStats {
    let mut mean = 0.0;
    let mut abs_mean = 0.0;
    let mut second = 0.0;
    for (&l, &w) in p.labels.iter().zip(&p.probs) {
        let x = l as f64;
        mean += w * x;
        abs_mean += w * x.abs();
        second += w * x * x;
    }
    let mut variance = 0.0;
    let mut third = 0.0;
    for (&l, &w) in p.labels.iter().zip(&p.probs) {
        let d = l as f64 - mean;
        variance += w * d * d;
        third += w * d * d * d;
    }
    let skewness = if second > 0.0 { third / second.powi(3) } else { 0.0 };
    DistStats { mean, abs_mean, variance, skewness, entropy: p.entropy() }
}
