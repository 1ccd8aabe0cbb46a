use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graphs::{Graph, GraphFamily};

/// 2-CNF formula over variables 1..=n; literal +v is x_v, −v is ¬x_v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatFormula {
    n: usize,
    clauses: Vec<[i32; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatOutcome {
    /// x_1..x_n when a satisfying assignment was found
    pub assignment: Option<Vec<bool>>,
    pub flips: usize,
}

impl SatFormula {
    pub fn new(n: usize, clauses: Vec<[i32; 2]>) -> Result<Self> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > n {
                    return invalid(format!("literal {l} out of range"));
                }
            }
        }
        Ok(Self { n, clauses })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn clauses(&self) -> &[[i32; 2]] {
        &self.clauses
    }

    fn lit(l: i32, a: &[bool]) -> bool {
        let v = a[l.unsigned_abs() as usize - 1];
        if l > 0 {
            v
        } else {
            !v
        }
    }

    pub fn first_unsatisfied(&self, a: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| !(Self::lit(c[0], a) || Self::lit(c[1], a)))
    }

    pub fn is_satisfied(&self, a: &[bool]) -> bool {
        self.first_unsatisfied(a).is_none()
    }

    /// Random clauses over distinct variables, all consistent with a hidden random assignment.
    pub fn random_planted<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return invalid("need at least two variables");
        }
        let planted: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let mut clauses = Vec::with_capacity(m);
        while clauses.len() < m {
            let a = rng.gen_range(1..=n as i32);
            let mut b = rng.gen_range(1..=n as i32);
            while b == a {
                b = rng.gen_range(1..=n as i32);
            }
            let c = [if rng.gen() { a } else { -a }, if rng.gen() { b } else { -b }];
            if Self::lit(c[0], &planted) || Self::lit(c[1], &planted) {
                clauses.push(c);
            }
        }
        Self::new(n, clauses)
    }
}

/// Random-flip walk from the all-true assignment, at most 2n² flips.
pub fn two_sat_walk(f: &SatFormula, seed: u64) -> SatOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![true; f.n()];
    let limit = 2 * f.n() * f.n();
    for flips in 0..=limit {
        match f.first_unsatisfied(&a) {
            None => return SatOutcome { assignment: Some(a), flips },
            Some(_) if flips == limit => break,
            Some(ci) => {
                let lit = f.clauses()[ci][rng.gen_range(0..2)];
                let v = lit.unsigned_abs() as usize - 1;
                a[v] = !a[v];
            }
        }
    }
    SatOutcome { assignment: None, flips: limit }
}

/// Layer-by-layer hypercube traversal with memory; returns a_0..a_n.
pub fn traverse_hypercube_memory(n: usize, seed: u64) -> Result<Vec<usize>> {
    if n == 0 || n > 30 {
        return invalid("dimension must be in 1..=30");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nbrs = |v: usize| (0..n).map(move |j| v ^ (1 << j));
    let a0 = 0usize;
    let a1 = a0 ^ (1 << rng.gen_range(0..n));
    let mut path = vec![a0, a1];
    // S_{k−1}: the lower-layer neighbours of a_k
    let mut mem: BTreeSet<usize> = BTreeSet::from([a0]);
    for _ in 1..n {
        let ak = *path.last().unwrap();
        let options: Vec<usize> = nbrs(ak).filter(|w| !mem.contains(w)).collect();
        let next = *options.choose(&mut rng).unwrap();
        let mem_nbrs: BTreeSet<usize> = mem.iter().flat_map(|&s| nbrs(s)).collect();
        mem = nbrs(next).filter(|w| mem_nbrs.contains(w)).collect();
        path.push(next);
    }
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedTraversal {
    pub found_exit: bool,
    pub vertex: usize,
    /// moves made, backtracking included
    pub steps: usize,
    /// vertices on the path from ENTRANCE to the first central vertex, both ends included
    pub first_phase_len: usize,
}

/// Memory walk on two glued trees using only the neighbour oracle and vertex names.
pub fn traverse_glued_trees_memory(g: &Graph, seed: u64) -> Result<GluedTraversal> {
    let n = match g.family() {
        Some(GraphFamily::GluedTrees(n)) => *n,
        _ => return invalid("graph must be built as plain glued trees"),
    };
    let names = g.labels().expect("glued trees carry labels");
    let entrance = names.iter().position(|s| s == "ENTRANCE").unwrap();
    let exit = names.iter().position(|s| s == "EXIT").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_steps = 100 * n * n;

    let mut path = vec![entrance];
    let mut steps = 0usize;
    loop {
        let cur = *path.last().unwrap();
        if path.len() > 1 && (cur == exit || g.degree(cur) == 2) {
            break;
        }
        let prev = path.len().checked_sub(2).map(|i| path[i]);
        let opts: Vec<usize> = g.neighbors(cur).iter().copied().filter(|&w| Some(w) != prev).collect();
        path.push(*opts.choose(&mut rng).unwrap());
        steps += 1;
    }
    let first_phase_len = path.len();
    let t0 = path.len() - 1;
    let mut banned: Option<(usize, usize)> = None; // (path index, neighbour to avoid there)
    while steps < max_steps {
        let cur = *path.last().unwrap();
        if cur == exit {
            return Ok(GluedTraversal { found_exit: true, vertex: cur, steps, first_phase_len });
        }
        let idx = path.len() - 1;
        if idx > t0 && g.degree(cur) == 2 {
            // back in the centre after 2k moves: the wrong turn was taken k moves ago
            let k = (idx - t0) / 2;
            let peak = t0 + k;
            let wrong = path[peak + 1];
            steps += idx - peak;
            path.truncate(peak + 1);
            banned = Some((peak, wrong));
        }
        let cur = *path.last().unwrap();
        let idx = path.len() - 1;
        let prev = path[idx - 1];
        let avoid = banned.filter(|&(i, _)| i == idx).map(|(_, w)| w);
        let opts: Vec<usize> = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| w != prev && Some(w) != avoid)
            .collect();
        path.push(*opts.choose(&mut rng).unwrap());
        steps += 1;
    }
    Ok(GluedTraversal { found_exit: false, vertex: *path.last().unwrap(), steps, first_phase_len })
}
