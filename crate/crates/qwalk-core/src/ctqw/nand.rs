use rand::Rng;

use crate::error::{invalid, Result};

/// Stand-in for X = +∞ on a leaf with no children.
pub const NAND_SENTINEL: f64 = 1e12;
/// |X| at or above this reads as 0, below as 1.
pub const NAND_THRESHOLD: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NandTree {
    Leaf(bool),
    Node(Box<NandTree>, Box<NandTree>),
}

impl NandTree {
    pub fn node(a: NandTree, b: NandTree) -> Self {
        NandTree::Node(Box::new(a), Box::new(b))
    }

    /// Balanced tree of the given depth, leaves left to right.
    pub fn balanced(depth: u32, leaves: &[bool]) -> Result<Self> {
        if depth > 24 || leaves.len() != 1usize << depth {
            return invalid(format!("depth {depth} needs 2^{depth} leaves, got {}", leaves.len()));
        }
        fn build(leaves: &[bool]) -> NandTree {
            if leaves.len() == 1 {
                NandTree::Leaf(leaves[0])
            } else {
                let (l, r) = leaves.split_at(leaves.len() / 2);
                NandTree::node(build(l), build(r))
            }
        }
        Ok(build(leaves))
    }

    pub fn random_balanced<R: Rng + ?Sized>(depth: u32, rng: &mut R) -> Result<Self> {
        let leaves: Vec<bool> = (0..1usize << depth.min(24)).map(|_| rng.gen()).collect();
        NandTree::balanced(depth, &leaves)
    }

    /// Balanced instance where every 0 node has children (1, 1) and every 1 node one child of
    /// each value in random order.
    pub fn hard_instance<R: Rng + ?Sized>(depth: u32, root: bool, rng: &mut R) -> Result<Self> {
        if depth > 24 {
            return invalid("depth too large");
        }
        fn build<R: Rng + ?Sized>(depth: u32, value: bool, rng: &mut R) -> NandTree {
            if depth == 0 {
                return NandTree::Leaf(value);
            }
            let (a, b) = if !value {
                (true, true)
            } else if rng.gen() {
                (false, true)
            } else {
                (true, false)
            };
            NandTree::node(build(depth - 1, a, rng), build(depth - 1, b, rng))
        }
        Ok(build(depth, root, rng))
    }

    pub fn value(&self) -> bool {
        match self {
            NandTree::Leaf(b) => *b,
            NandTree::Node(a, b) => !(a.value() && b.value()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            NandTree::Leaf(_) => 1,
            NandTree::Node(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            NandTree::Leaf(_) => 0,
            NandTree::Node(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    fn balanced_depth(&self) -> Option<u32> {
        match self {
            NandTree::Leaf(_) => Some(0),
            NandTree::Node(a, b) => match (a.balanced_depth()?, b.balanced_depth()?) {
                (x, y) if x == y => Some(x + 1),
                _ => None,
            },
        }
    }
}

/// A three-move game with root value 0: both of the first player's moves lead to positions
/// that the opponent wins.
pub fn nand_game_instance() -> NandTree {
    let l = [true, true, false, false, true, true, true, false];
    NandTree::balanced(3, &l).expect("eight leaves")
}

#[derive(Debug, Clone, PartialEq)]
pub struct NandEval {
    pub ratio_bit: bool,
    pub boolean_bit: bool,
    pub root_ratio: f64,
    /// X at every vertex in post-order
    pub trace: Vec<f64>,
}

fn ratio(tree: &NandTree, trace: &mut Vec<f64>) -> f64 {
    let x = match tree {
        // a 1 leaf carries one extra childless vertex below it
        NandTree::Leaf(false) => NAND_SENTINEL,
        NandTree::Leaf(true) => 1.0 / (0.0 - NAND_SENTINEL),
        NandTree::Node(a, b) => {
            let c1 = ratio(a, trace);
            let c2 = ratio(b, trace);
            1.0 / (0.0 - c1 - c2)
        }
    };
    trace.push(x);
    x
}

/// Ratio recursion X = 1/(E − C₁ − C₂) at E = 0, read against the boolean value.
pub fn nand_eval(tree: &NandTree) -> NandEval {
    let mut trace = Vec::new();
    let root_ratio = ratio(tree, &mut trace);
    NandEval { ratio_bit: root_ratio.abs() < NAND_THRESHOLD, boolean_bit: tree.value(), root_ratio, trace }
}

fn random_eval<R: Rng + ?Sized>(tree: &NandTree, rng: &mut R, queries: &mut u64) -> bool {
    match tree {
        NandTree::Leaf(b) => {
            *queries += 1;
            *b
        }
        NandTree::Node(a, b) => {
            let (first, second) = if rng.gen() { (a, b) } else { (b, a) };
            if !random_eval(first, rng, queries) {
                return true;
            }
            !random_eval(second, rng, queries)
        }
    }
}

/// Mean leaf queries of randomized short-circuit evaluation of the given tree.
pub fn classical_nand_cost<R: Rng + ?Sized>(tree: &NandTree, rng: &mut R, trials: usize) -> Result<f64> {
    if tree.balanced_depth().is_none() {
        return invalid("classical cost is defined for balanced trees");
    }
    if trials == 0 {
        return invalid("need at least one trial");
    }
    let mut total = 0u64;
    for _ in 0..trials {
        let mut q = 0;
        let v = random_eval(tree, rng, &mut q);
        debug_assert_eq!(v, tree.value());
        total += q;
    }
    Ok(total as f64 / trials as f64)
}
