//! Parameterised graph families built in code.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// `C_n` on vertices `0..n`, `i ~ i+1 mod n`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `P_n` with `n` vertices `0..n` in order.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OutOfRange("path needs at least 1 vertex".into()));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Layout of the flower snark `J_m`, `m = 2k+1`, with signed indices
/// `-k..=k`. Vertex ids: `v_i = i mod m`, then `z`, `x`, `y` blocks of `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flower {
    pub m: usize,
}

impl Flower {
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) {
            return Err(Error::OutOfRange(format!("flower needs odd m >= 3, got {m}")));
        }
        Ok(Self { m })
    }

    pub fn k(&self) -> i64 {
        (self.m as i64 - 1) / 2
    }

    fn idx(&self, i: i64) -> usize {
        i.rem_euclid(self.m as i64) as usize
    }

    pub fn v(&self, i: i64) -> Vertex {
        self.idx(i)
    }
    pub fn z(&self, i: i64) -> Vertex {
        self.m + self.idx(i)
    }
    pub fn x(&self, i: i64) -> Vertex {
        2 * self.m + self.idx(i)
    }
    pub fn y(&self, i: i64) -> Vertex {
        3 * self.m + self.idx(i)
    }

    pub fn graph(&self) -> Result<Graph> {
        let k = self.k();
        let mut edges = Vec::with_capacity(6 * self.m);
        for i in -k..=k {
            edges.push((self.z(i), self.v(i)));
            edges.push((self.z(i), self.x(i)));
            edges.push((self.z(i), self.y(i)));
            edges.push((self.v(i), self.v(i + 1)));
        }
        for i in -k..k {
            edges.push((self.x(i), self.x(i + 1)));
            edges.push((self.y(i), self.y(i + 1)));
        }
        edges.push((self.x(k), self.y(-k)));
        edges.push((self.y(k), self.x(-k)));
        let mut labels = Vec::with_capacity(4 * self.m);
        for i in -k..=k {
            labels.push((self.v(i), format!("v{i}")));
            labels.push((self.z(i), format!("z{i}")));
            labels.push((self.x(i), format!("x{i}")));
            labels.push((self.y(i), format!("y{i}")));
        }
        Graph::new(4 * self.m, edges)?.with_labels(labels)
    }
}

pub fn flower(m: usize) -> Result<Graph> {
    Flower::new(m)?.graph()
}
