//! Graph families, matrix extraction and edge colorings for coined walks.

use std::collections::VecDeque;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core_math::{from_real, ComplexMatrix};
use crate::error::{invalid, Result, WalkError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFamily {
    Line(usize),
    Cycle(usize),
    Complete { n: usize, loops: bool },
    CompleteBipartite(usize, usize),
    /// M parts of N vertices each
    MPartite { parts: usize, size: usize },
    Hypercube(usize),
    /// center 0, spikes 1..=n
    Star(usize),
    /// star with N spikes plus an edge between spikes 1 and 2
    StarExtraEdge(usize),
    GluedTrees(usize),
    GluedTreesCycle { n: usize, seed: u64 },
    /// q-subsets (left) and (q+1)-subsets (right) of {0..N−1}
    SubsetBipartite { n: usize, q: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    Degree,
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    columns: Option<Vec<usize>>,
    family: Option<GraphFamily>,
}

impl Graph {
    /// Graph from vertex count, undirected edges and loop vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        let mut es: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        let mut loop_flags = vec![false; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return invalid(format!("edge ({a},{b}) out of range for n={n}"));
            }
            if a == b {
                loop_flags[a] = true;
            } else {
                es.push((a.min(b), a.max(b)));
            }
        }
        for &v in loops {
            if v >= n {
                return invalid(format!("loop at {v} out of range"));
            }
            loop_flags[v] = true;
        }
        es.sort_unstable();
        let before = es.len();
        es.dedup();
        if es.len() != before {
            return invalid("duplicate edge");
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in &es {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        Ok(Self { n, edges: es, loops: loop_flags, neighbors, labels: None, columns: None, family: None })
    }

    pub fn line(n: usize) -> Result<Self> {
        build_graph(&GraphFamily::Line(n))
    }
    pub fn cycle(n: usize) -> Result<Self> {
        build_graph(&GraphFamily::Cycle(n))
    }
    pub fn complete(n: usize, loops: bool) -> Result<Self> {
        build_graph(&GraphFamily::Complete { n, loops })
    }
    pub fn hypercube(n: usize) -> Result<Self> {
        build_graph(&GraphFamily::Hypercube(n))
    }
    pub fn star(n: usize) -> Result<Self> {
        build_graph(&GraphFamily::Star(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }
    pub fn loop_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.loops[v]).collect()
    }
    /// Neighbours other than v itself, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }
    /// Loops count once.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len() + usize::from(self.loops[v])
    }
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b {
            return self.loops[a];
        }
        self.neighbors[a].binary_search(&b).is_ok()
    }
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
    /// Column index per vertex (glued trees only).
    pub fn columns(&self) -> Option<&[usize]> {
        self.columns.as_deref()
    }
    pub fn family(&self) -> Option<&GraphFamily> {
        self.family.as_ref()
    }

    /// Vertex sets per column, in vertex order.
    pub fn column_sets(&self) -> Option<Vec<Vec<usize>>> {
        let cols = self.columns.as_ref()?;
        let k = cols.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for (v, &c) in cols.iter().enumerate() {
            out[c].push(v);
        }
        Some(out)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = q.pop_front() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    q.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Two-colourable; a loop makes a graph non-bipartite.
    pub fn is_bipartite(&self) -> bool {
        if self.loops.iter().any(|&l| l) {
            return false;
        }
        let mut color = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s] != usize::MAX {
                continue;
            }
            color[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &self.neighbors[v] {
                    if color[w] == usize::MAX {
                        color[w] = 1 - color[v];
                        q.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn adjacency_real(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        for v in 0..self.n {
            if self.loops[v] {
                a[(v, v)] = 1.0;
            }
        }
        a
    }

    pub fn matrix_real(&self, kind: MatrixKind) -> DMatrix<f64> {
        let deg = DMatrix::from_fn(self.n, self.n, |i, j| if i == j { self.degree(i) as f64 } else { 0.0 });
        match kind {
            MatrixKind::Adjacency => self.adjacency_real(),
            MatrixKind::Degree => deg,
            MatrixKind::Laplacian => self.adjacency_real() - deg,
        }
    }

    pub fn matrix(&self, kind: MatrixKind) -> ComplexMatrix {
        from_real(&self.matrix_real(kind))
    }

    /// "n m" then one "u v" line per edge (loops as "v v").
    pub fn to_edge_list(&self) -> String {
        let loops = self.loop_vertices();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edges.len() + loops.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        for v in loops {
            let _ = writeln!(s, "{v} {v}");
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| WalkError::InvalidParameter("empty edge list".into()))?;
        let nums = parse_pair(header)?;
        let (n, m) = (nums.0, nums.1);
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return invalid(format!("header announces {m} edges, found {}", edges.len()));
        }
        Graph::from_edges(n, &edges, &[])
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(|t| t.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => invalid(format!("malformed line {line:?}")),
    }
}

pub fn build_graph(family: &GraphFamily) -> Result<Graph> {
    use GraphFamily::*;
    let mut g = match *family {
        Line(n) => {
            if n == 0 {
                return invalid("line needs at least one vertex");
            }
            let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Graph::from_edges(n, &e, &[])?
        }
        Cycle(n) => {
            if n < 3 {
                return invalid("cycle needs n >= 3");
            }
            let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &e, &[])?
        }
        Complete { n, loops } => {
            if n == 0 {
                return invalid("complete graph needs n >= 1");
            }
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    e.push((i, j));
                }
            }
            let l: Vec<usize> = if loops { (0..n).collect() } else { vec![] };
            Graph::from_edges(n, &e, &l)?
        }
        CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return invalid("both parts must be nonempty");
            }
            let mut e = Vec::new();
            for i in 0..a {
                for j in 0..b {
                    e.push((i, a + j));
                }
            }
            Graph::from_edges(a + b, &e, &[])?
        }
        MPartite { parts, size } => {
            if parts < 2 || size == 0 {
                return invalid("need at least two nonempty parts");
            }
            let n = parts * size;
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if i / size != j / size {
                        e.push((i, j));
                    }
                }
            }
            Graph::from_edges(n, &e, &[])?
        }
        Hypercube(dim) => {
            if dim == 0 || dim > 24 {
                return invalid("hypercube dimension must be in 1..=24");
            }
            let n = 1usize << dim;
            let mut e = Vec::new();
            for v in 0..n {
                for j in 0..dim {
                    let w = v ^ (1 << j);
                    if v < w {
                        e.push((v, w));
                    }
                }
            }
            Graph::from_edges(n, &e, &[])?
        }
        Star(n) => {
            if n == 0 {
                return invalid("star needs at least one spike");
            }
            let e: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            Graph::from_edges(n + 1, &e, &[])?
        }
        StarExtraEdge(n) => {
            if n < 3 {
                return invalid("star with extra edge needs N >= 3");
            }
            let mut e: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            e.push((1, 2));
            Graph::from_edges(n + 1, &e, &[])?
        }
        GluedTrees(n) => glued_trees(n, None)?,
        GluedTreesCycle { n, seed } => glued_trees(n, Some(seed))?,
        SubsetBipartite { n, q } => subset_bipartite(n, q)?,
    };
    g.family = Some(family.clone());
    Ok(g)
}

// Column-by-column numbering: left tree in heap order, then the right tree
// mirrored (deepest level first), EXIT last.
fn glued_trees(n: usize, seed: Option<u64>) -> Result<Graph> {
    if !(2..=20).contains(&n) {
        return invalid("glued trees need depth n in 2..=20");
    }
    let leaves = 1usize << (n - 1);
    let mut left: Vec<Vec<usize>> = Vec::new(); // left[depth][heap index]
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut columns = Vec::new();
    let mut next = 0usize;
    let shared = seed.is_none();
    for d in 0..n {
        let ids: Vec<usize> = (0..1usize << d).map(|i| next + i).collect();
        next += ids.len();
        columns.extend(std::iter::repeat(d).take(ids.len()));
        left.push(ids);
    }
    if shared {
        right[n - 1] = left[n - 1].clone();
    }
    let mut col = n;
    let deepest = if shared { n as isize - 2 } else { n as isize - 1 };
    let mut d = deepest;
    while d >= 0 {
        let du = d as usize;
        let ids: Vec<usize> = (0..1usize << du).map(|i| next + i).collect();
        next += ids.len();
        columns.extend(std::iter::repeat(col).take(ids.len()));
        right[du] = ids;
        col += 1;
        d -= 1;
    }
    let total = next;
    let mut edges = Vec::new();
    for tree in [&left, &right] {
        for d in 0..n - 1 {
            for (i, &p) in tree[d].iter().enumerate() {
                edges.push((p, tree[d + 1][2 * i]));
                edges.push((p, tree[d + 1][2 * i + 1]));
            }
        }
    }
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut l = left[n - 1].clone();
        let mut r = right[n - 1].clone();
        l.shuffle(&mut rng);
        r.shuffle(&mut rng);
        // L0 R0 L1 R1 ... L_{K-1} R_{K-1} back to L0
        for i in 0..leaves {
            edges.push((l[i], r[i]));
            edges.push((r[i], l[(i + 1) % leaves]));
        }
    }
    let mut g = Graph::from_edges(total, &edges, &[])?;
    let mut labels: Vec<String> = (0..total).map(|v| format!("c{}", columns[v])).collect();
    labels[0] = "ENTRANCE".into();
    labels[total - 1] = "EXIT".into();
    g.labels = Some(labels);
    g.columns = Some(columns);
    Ok(g)
}

/// All k-subsets of {0..n−1} as bitmasks in colexicographic (ascending value) order.
pub fn subsets_colex(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return vec![];
    }
    (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

fn subset_label(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn subset_bipartite(n: usize, q: usize) -> Result<Graph> {
    if n == 0 || n > 20 || q >= n {
        return invalid("subset graph needs 0 <= q < N <= 20");
    }
    let left = subsets_colex(n, q);
    let right = subsets_colex(n, q + 1);
    let mut edges = Vec::new();
    for (i, &s) in left.iter().enumerate() {
        for (j, &t) in right.iter().enumerate() {
            if s & t == s {
                edges.push((i, left.len() + j));
            }
        }
    }
    let mut g = Graph::from_edges(left.len() + right.len(), &edges, &[])?;
    g.labels = Some(left.iter().chain(&right).map(|&m| subset_label(m)).collect());
    Ok(g)
}

/// d colours, each a permutation of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    d: usize,
    next: Vec<Vec<usize>>, // next[v][c]
}

impl EdgeColoring {
    pub fn from_table(next: Vec<Vec<usize>>) -> Result<Self> {
        let d = next.first().map_or(0, |r| r.len());
        let n = next.len();
        if next.iter().any(|r| r.len() != d) {
            return invalid("ragged colour table");
        }
        let col = Self { d, next };
        for c in 0..d {
            if !col.is_permutation(c) || (0..n).any(|v| col.next[v][c] >= n) {
                return invalid(format!("colour {c} is not a permutation"));
            }
        }
        Ok(col)
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn n(&self) -> usize {
        self.next.len()
    }
    pub fn next(&self, v: usize, c: usize) -> usize {
        self.next[v][c]
    }

    pub fn is_permutation(&self, c: usize) -> bool {
        let n = self.next.len();
        let mut seen = vec![false; n];
        for v in 0..n {
            let w = self.next[v][c];
            if w >= n || seen[w] {
                return false;
            }
            seen[w] = true;
        }
        true
    }
}

pub fn color_edges(g: &Graph) -> Result<EdgeColoring> {
    let d = g.regular_degree().ok_or(WalkError::NotRegular)?;
    let n = g.n();
    let table: Vec<Vec<usize>> = match g.family() {
        Some(GraphFamily::Cycle(_)) => (0..n).map(|v| vec![(v + 1) % n, (v + n - 1) % n]).collect(),
        Some(GraphFamily::Hypercube(dim)) => {
            (0..n).map(|v| (0..*dim).map(|j| v ^ (1 << j)).collect()).collect()
        }
        Some(GraphFamily::Complete { loops: true, .. }) => {
            (0..n).map(|v| (0..n).map(|c| (v + c) % n).collect()).collect()
        }
        Some(GraphFamily::Complete { loops: false, .. }) => {
            (0..n).map(|v| (0..n - 1).map(|c| (v + c + 1) % n).collect()).collect()
        }
        _ => generic_coloring(g, d)?,
    };
    EdgeColoring::from_table(table)
}

// Split the arcs into d perfect matchings of the bipartite double cover.
fn generic_coloring(g: &Graph, d: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut arcs: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut a = g.neighbors(v).to_vec();
            if g.has_loop(v) {
                a.push(v);
            }
            a
        })
        .collect();
    let mut table = vec![Vec::with_capacity(d); n];
    for _ in 0..d {
        let mut match_right: Vec<Option<usize>> = vec![None; n];
        for u in 0..n {
            let mut visited = vec![false; n];
            if !augment(u, &arcs, &mut match_right, &mut visited) {
                return Err(WalkError::Degenerate("no perfect matching in double cover".into()));
            }
        }
        let mut mate = vec![0; n];
        for (w, m) in match_right.iter().enumerate() {
            mate[m.unwrap()] = w;
        }
        for u in 0..n {
            table[u].push(mate[u]);
            let pos = arcs[u].iter().position(|&w| w == mate[u]).unwrap();
            arcs[u].swap_remove(pos);
        }
    }
    Ok(table)
}

fn augment(u: usize, arcs: &[Vec<usize>], match_right: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &w in &arcs[u] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        if match_right[w].is_none() || augment(match_right[w].unwrap(), arcs, match_right, visited) {
            match_right[w] = Some(u);
            return true;
        }
    }
    false
}
