use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Result, WalkError};
use crate::graphs::subsets_colex;

/// Largest ground set the dense simulation accepts.
pub const MAX_ELEMENTS: usize = 14;

/// Property 𝒫 of a k-subset, evaluated on the oracle values of its elements.
#[derive(Debug, Clone)]
pub enum SubsetProperty {
    /// all k values equal; k = 2 is the collision problem
    Collision,
    /// the k values sum to the target
    Sum(i64),
    /// every value is nonzero; with k = 1 this marks single elements
    Flagged,
    Custom(fn(&[i64]) -> bool),
}

impl SubsetProperty {
    pub fn holds(&self, values: &[i64]) -> bool {
        match self {
            SubsetProperty::Collision => values.windows(2).all(|w| w[0] == w[1]),
            SubsetProperty::Sum(t) => values.iter().sum::<i64>() == *t,
            SubsetProperty::Flagged => values.iter().all(|&v| v != 0),
            SubsetProperty::Custom(f) => f(values),
        }
    }
}

/// An oracle f: {0..N−1} → ℤ together with the property sought among its k-subsets.
#[derive(Debug, Clone)]
pub struct SubsetProblem {
    values: Vec<i64>,
    k: usize,
    property: SubsetProperty,
}

fn elements(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

fn below(j: usize) -> u32 {
    (1u32 << j) - 1
}

impl SubsetProblem {
    pub fn new(values: Vec<i64>, k: usize, property: SubsetProperty) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > MAX_ELEMENTS {
            return invalid(format!("ground set size {n} outside 1..={MAX_ELEMENTS}"));
        }
        if k == 0 || k > n {
            return invalid(format!("k = {k} must lie in 1..={n}"));
        }
        Ok(SubsetProblem { values, k, property })
    }

    /// Collision instance: distinct values except f(a) = f(b).
    pub fn collision(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == b || a >= n || b >= n {
            return invalid("collision needs two distinct elements inside the ground set");
        }
        let mut values: Vec<i64> = (0..n as i64).collect();
        values[b] = values[a];
        SubsetProblem::new(values, 2, SubsetProperty::Collision)
    }

    /// k = 1 search for the given marked elements.
    pub fn marked(n: usize, marked: &[usize]) -> Result<Self> {
        let mut values = vec![0; n];
        for &m in marked {
            if m >= n {
                return invalid(format!("marked element {m} outside 0..{n}"));
            }
            values[m] = 1;
        }
        SubsetProblem::new(values, 1, SubsetProperty::Flagged)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn property(&self) -> &SubsetProperty {
        &self.property
    }

    /// The data register f(𝒮) of a set, in increasing element order.
    pub fn data(&self, mask: u32) -> Vec<i64> {
        elements(mask).map(|i| self.values[i]).collect()
    }

    /// Whether some k-subset of the set has the property.
    pub fn contains_solution(&self, mask: u32) -> bool {
        let items: Vec<usize> = elements(mask).collect();
        let mut pick = Vec::with_capacity(self.k);
        self.search(&items, 0, &mut pick)
    }

    fn search(&self, items: &[usize], from: usize, pick: &mut Vec<i64>) -> bool {
        if pick.len() == self.k {
            return self.property.holds(pick);
        }
        let need = self.k - pick.len();
        for i in from..items.len() {
            if items.len() - i < need {
                break;
            }
            pick.push(self.values[items[i]]);
            let hit = self.search(items, i + 1, pick);
            pick.pop();
            if hit {
                return true;
            }
        }
        false
    }

    /// Ground truth: does any k-subset of the whole set qualify.
    pub fn has_solution(&self) -> bool {
        self.contains_solution(below(self.n()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// |𝒮, f(𝒮), j⟩ with |𝒮| = q, j ∉ 𝒮
    Left,
    /// |𝒯, f(𝒯), j⟩ with |𝒯| = q + 1, j ∈ 𝒯
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetBasisState {
    pub side: Side,
    pub set: u32,
    pub data: Vec<i64>,
    pub pointer: usize,
}

/// Amplitudes over the walk basis; all operators of the walk are real.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetWalkState {
    amplitudes: DVector<f64>,
}

impl SubsetWalkState {
    pub fn amplitudes(&self) -> &DVector<f64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// The walk on q- and (q+1)-subsets with operators S, C_G and P and an oracle ledger.
#[derive(Debug, Clone)]
pub struct SubsetWalk {
    problem: SubsetProblem,
    q: usize,
    left: Vec<u32>,
    right: Vec<u32>,
    flagged: Vec<bool>,
    shift: Vec<usize>,
    queries: u64,
}

impl SubsetWalk {
    pub fn new(problem: &SubsetProblem, q: usize) -> Result<Self> {
        let n = problem.n();
        if q < problem.k() || q >= n {
            return invalid(format!("subset size q = {q} must satisfy k <= q < N = {n}"));
        }
        let left = subsets_colex(n, q);
        let right = subsets_colex(n, q + 1);
        let flagged = left.iter().map(|&s| problem.contains_solution(s)).collect();
        let (dl, dr) = (n - q, q + 1);
        let left_dim = left.len() * dl;
        let mut shift = vec![usize::MAX; left_dim + right.len() * dr];
        for (i, &s) in left.iter().enumerate() {
            for j in (0..n).filter(|&j| s >> j & 1 == 0) {
                let a = i * dl + j - (s & below(j)).count_ones() as usize;
                let t = s | 1 << j;
                let ti = right.binary_search(&t).expect("superset is enumerated");
                let b = left_dim + ti * dr + (t & below(j)).count_ones() as usize;
                shift[a] = b;
                shift[b] = a;
            }
        }
        debug_assert!(shift.iter().all(|&x| x != usize::MAX));
        Ok(SubsetWalk { problem: problem.clone(), q, left, right, flagged, shift, queries: 0 })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn problem(&self) -> &SubsetProblem {
        &self.problem
    }

    pub fn left_dim(&self) -> usize {
        self.left.len() * (self.problem.n() - self.q)
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    pub fn reset_ledger(&mut self) {
        self.queries = 0;
    }

    pub fn basis_state(&self, index: usize) -> SubsetBasisState {
        let n = self.problem.n();
        let (side, set, pos, pool) = if index < self.left_dim() {
            let s = self.left[index / (n - self.q)];
            (Side::Left, s, index % (n - self.q), !s & below(n))
        } else {
            let r = index - self.left_dim();
            let t = self.right[r / (self.q + 1)];
            (Side::Right, t, r % (self.q + 1), t)
        };
        let pointer = elements(pool).nth(pos).expect("pointer inside its register");
        SubsetBasisState { side, set, data: self.problem.data(set), pointer }
    }

    /// Equal superposition over every |𝒮, f(𝒮), j⟩; loading the data register costs q queries.
    pub fn initial_state(&mut self) -> SubsetWalkState {
        self.queries += self.q as u64;
        let ld = self.left_dim();
        let a = 1.0 / (ld as f64).sqrt();
        SubsetWalkState { amplitudes: DVector::from_fn(self.dim(), |i, _| if i < ld { a } else { 0.0 }) }
    }

    /// C_G on every coin block: N − q pointers on the left, q + 1 on the right. No queries.
    pub fn apply_coin(&self, st: &mut SubsetWalkState) {
        let ld = self.left_dim();
        let v = st.amplitudes.as_mut_slice();
        let (l, r) = v.split_at_mut(ld);
        for block in l.chunks_mut(self.problem.n() - self.q).chain(r.chunks_mut(self.q + 1)) {
            let mean = block.iter().sum::<f64>() / block.len() as f64;
            for z in block.iter_mut() {
                *z = 2.0 * mean - *z;
            }
        }
    }

    /// S adds or removes the pointed element; updating f of that element costs one query.
    pub fn apply_shift(&mut self, st: &mut SubsetWalkState) {
        self.queries += 1;
        let old = st.amplitudes.clone();
        for (a, &b) in self.shift.iter().enumerate() {
            st.amplitudes[b] = old[a];
        }
    }

    /// P: −1 on left states whose set contains a solution, identity on the right. No queries.
    pub fn apply_phase_flip(&self, st: &mut SubsetWalkState) {
        let d = self.problem.n() - self.q;
        for (i, _) in self.flagged.iter().enumerate().filter(|(_, &f)| f) {
            for z in st.amplitudes.rows_mut(i * d, d).iter_mut() {
                *z = -*z;
            }
        }
    }

    /// One round (S·C_G)^{2τ₁}·P.
    pub fn apply_round(&mut self, st: &mut SubsetWalkState, tau1: usize) {
        self.apply_phase_flip(st);
        for _ in 0..2 * tau1 {
            self.apply_coin(st);
            self.apply_shift(st);
        }
    }

    /// Probability that measuring the set register gives a set containing a solution.
    pub fn success(&self, st: &SubsetWalkState) -> f64 {
        let d = self.problem.n() - self.q;
        self.flagged
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| st.amplitudes.rows(i * d, d).norm_squared())
            .sum()
    }

    pub fn left_mass(&self, st: &SubsetWalkState) -> f64 {
        st.amplitudes.rows(0, self.left_dim()).norm_squared()
    }

    /// Dense S·C_G, built column by column; leaves the ledger untouched.
    pub fn step_matrix(&self) -> DMatrix<f64> {
        let mut scratch = self.clone();
        scratch.columns(|w, st| {
            w.apply_coin(st);
            w.apply_shift(st);
        })
    }

    /// Dense (S·C_G)^{2τ₁}·P.
    pub fn round_matrix(&self, tau1: usize) -> DMatrix<f64> {
        let mut scratch = self.clone();
        scratch.columns(|w, st| w.apply_round(st, tau1))
    }

    fn columns(&mut self, mut op: impl FnMut(&mut SubsetWalk, &mut SubsetWalkState)) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for c in 0..d {
            let mut st = SubsetWalkState { amplitudes: DVector::zeros(d) };
            st.amplitudes[c] = 1.0;
            op(self, &mut st);
            m.set_column(c, &st.amplitudes);
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// τ₁ = ⌊(π/2)√(q/k)⌉, τ₂ = ⌊(π/4)(N/q)^{k/2}⌉, plus a search of the ±2 window
    Auto,
    Fixed { tau1: usize, tau2: usize },
}

/// Rounded repetition numbers (τ₁, τ₂) for the subset walk.
pub fn collision_schedule(n: usize, q: usize, k: usize) -> (usize, usize) {
    let tau1 = (PI / 2.0 * (q as f64 / k as f64).sqrt()).round() as usize;
    let tau2 = (PI / 4.0 * (n as f64 / q as f64).powf(k as f64 / 2.0)).round() as usize;
    (tau1, tau2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleOptimum {
    pub tau1: usize,
    pub tau2: usize,
    pub success: f64,
}

#[derive(Debug, Clone)]
pub struct SubsetRun {
    pub tau1: usize,
    pub tau2: usize,
    pub success: f64,
    pub queries: u64,
    pub has_solution: bool,
    /// success after 0, 1, …, τ₂ rounds
    pub curve: Vec<f64>,
    /// probability on 𝒮-type states at the end
    pub left_mass: f64,
    /// best (τ₁, τ₂) within ±2 of the rounded schedule; only for `Schedule::Auto`
    pub window_optimum: Option<ScheduleOptimum>,
}

/// Success after every round for a fixed τ₁, with the oracle queries spent.
pub fn subset_success_curve(problem: &SubsetProblem, q: usize, tau1: usize, rounds: usize) -> Result<(Vec<f64>, u64)> {
    let mut walk = SubsetWalk::new(problem, q)?;
    let mut st = walk.initial_state();
    let mut curve = vec![walk.success(&st)];
    for _ in 0..rounds {
        walk.apply_round(&mut st, tau1);
        curve.push(walk.success(&st));
    }
    Ok((curve, walk.queries()))
}

pub fn subset_walk_run(problem: &SubsetProblem, q: usize, schedule: Schedule) -> Result<SubsetRun> {
    let (tau1, tau2) = match schedule {
        Schedule::Auto => collision_schedule(problem.n(), q, problem.k()),
        Schedule::Fixed { tau1, tau2 } => (tau1, tau2),
    };
    let mut walk = SubsetWalk::new(problem, q)?;
    let mut st = walk.initial_state();
    let mut curve = vec![walk.success(&st)];
    for _ in 0..tau2 {
        walk.apply_round(&mut st, tau1);
        curve.push(walk.success(&st));
    }
    let norm = st.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(WalkError::NotUnitary((norm - 1.0).abs()));
    }
    let window_optimum = match schedule {
        Schedule::Fixed { .. } => None,
        Schedule::Auto => {
            let mut best: Option<ScheduleOptimum> = None;
            for t1 in tau1.saturating_sub(2)..=tau1 + 2 {
                let (c, _) = subset_success_curve(problem, q, t1, tau2 + 2)?;
                for (t2, &s) in c.iter().enumerate().skip(tau2.saturating_sub(2)) {
                    if best.map_or(true, |b| s > b.success) {
                        best = Some(ScheduleOptimum { tau1: t1, tau2: t2, success: s });
                    }
                }
            }
            best
        }
    };
    Ok(SubsetRun {
        tau1,
        tau2,
        success: *curve.last().expect("curve starts with the initial state"),
        queries: walk.queries(),
        has_solution: problem.has_solution(),
        left_mass: walk.left_mass(&st),
        curve,
        window_optimum,
    })
}
