//! Upper bounds on the number of pebbles a configuration can put on the
//! target.
//!
//! Write `D(H, u)` for the most pebbles movable onto `u` using only moves
//! inside `H`. Two facts give a recursive bound:
//!
//! * the `u`-weight in `H` never increases, so `D(H, u) <= floor(weight)`;
//! * some optimal move multiset is acyclic and never moves a pebble off `u`,
//!   and then each neighbour `w` forwards at most half of what it could
//!   collect without `u`, so
//!   `D(H, u) <= C(u) + sum_{w ~ u} floor(D(H - u, w) / 2)`.
//!
//! Unrolling the second rule to a fixed depth and capping every level with
//! the first gives a cheap bound that is far sharper than the plain weight.

use crate::graph::{Graph, Vertex, UNREACHABLE};

#[derive(Clone, Debug)]
struct Node {
    u: Vertex,
    /// Distances from `u` in `G` minus the ancestors of this node.
    dist: Vec<u32>,
    max_dist: u32,
    children: Vec<usize>,
}

/// Precomputed recursion tree for one target.
#[derive(Clone, Debug)]
pub struct ReachBound {
    nodes: Vec<Node>,
}

impl ReachBound {
    /// `depth = 0` is the plain weight bound.
    pub fn new(g: &Graph, r: Vertex, depth: u32) -> Self {
        let mut nodes = Vec::new();
        let mut removed = Vec::new();
        build(g, r, depth, &mut removed, &mut nodes);
        Self { nodes }
    }

    /// Upper bound on the pebbles that can reach the target.
    pub fn eval(&self, counts: &[u32], scratch: &mut Vec<u64>) -> u64 {
        self.eval_node(0, counts, scratch)
    }

    fn eval_node(&self, i: usize, counts: &[u32], scratch: &mut Vec<u64>) -> u64 {
        let node = &self.nodes[i];
        let cap = floor_weight(counts, &node.dist, node.max_dist, scratch);
        if node.children.is_empty() || cap == 0 {
            return cap;
        }
        let mut rec = u64::from(counts[node.u]);
        for &c in &node.children {
            rec += self.eval_node(c, counts, scratch) / 2;
            if rec >= cap {
                return cap;
            }
        }
        rec
    }
}

fn build(g: &Graph, u: Vertex, depth: u32, removed: &mut Vec<Vertex>, nodes: &mut Vec<Node>) -> usize {
    let dist = g.distances_avoiding(u, removed);
    let max_dist = dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0);
    let idx = nodes.len();
    nodes.push(Node {
        u,
        dist,
        max_dist,
        children: Vec::new(),
    });
    if depth > 0 {
        removed.push(u);
        let mut children = Vec::new();
        for &w in g.neighbors(u) {
            if !removed.contains(&w) {
                children.push(build(g, w, depth - 1, removed, nodes));
            }
        }
        removed.pop();
        nodes[idx].children = children;
    }
    idx
}

/// `floor(sum_x C(x) 2^{-d(x)})` by repeated halving from the far end,
/// which equals the floor of the exact sum.
pub(crate) fn floor_weight(counts: &[u32], dist: &[u32], max_dist: u32, scratch: &mut Vec<u64>) -> u64 {
    let len = max_dist as usize + 1;
    scratch.clear();
    scratch.resize(len, 0);
    for (&k, &d) in counts.iter().zip(dist) {
        if k != 0 && d != UNREACHABLE {
            scratch[d as usize] += u64::from(k);
        }
    }
    let mut carry = 0u64;
    for d in (1..len).rev() {
        carry = (carry + scratch[d]) >> 1;
    }
    carry + scratch[0]
}
