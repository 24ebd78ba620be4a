//! Configurations, pebbling moves and r-weights.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::Rational;

/// Pebble counts, one per vertex of the host graph.
///
/// Value type: moves return a new configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    counts: Vec<u32>,
}

impl Configuration {
    pub fn empty(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    /// Builds a configuration on `g` from sparse `(vertex, count)` pairs.
    /// Repeated vertices accumulate.
    pub fn from_pairs(g: &Graph, pairs: impl IntoIterator<Item = (Vertex, u32)>) -> Result<Self> {
        let mut c = Self::empty(g.n());
        for (v, k) in pairs {
            g.check(v)?;
            c.counts[v] += k;
        }
        Ok(c)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u32> {
        self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.counts[v]
    }

    pub fn set(&mut self, v: Vertex, k: u32) {
        self.counts[v] = k;
    }

    pub fn add(&mut self, v: Vertex, k: u32) {
        self.counts[v] += k;
    }

    /// |C|
    pub fn size(&self) -> u64 {
        self.counts.iter().map(|&k| u64::from(k)).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.counts.iter().enumerate().filter(|(_, &k)| k > 0).map(|(v, _)| v)
    }

    pub fn is_empty_at(&self, v: Vertex) -> bool {
        self.counts[v] == 0
    }

    pub fn is_singleton_at(&self, v: Vertex) -> bool {
        self.counts[v] == 1
    }

    /// At most one pebble.
    pub fn is_small_at(&self, v: Vertex) -> bool {
        self.counts[v] <= 1
    }

    /// At least two pebbles, so a move can start here.
    pub fn is_big_at(&self, v: Vertex) -> bool {
        self.counts[v] >= 2
    }

    /// Pointwise `self <= other`.
    pub fn dominated_by(&self, other: &Configuration) -> bool {
        self.counts.len() == other.counts.len() && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn check_host(&self, g: &Graph) -> Result<()> {
        if self.counts.len() == g.n() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: g.n(),
                got: self.counts.len(),
            })
        }
    }

    /// One pebbling move: two pebbles leave `from`, one arrives at `to`.
    pub fn apply_move(&self, g: &Graph, from: Vertex, to: Vertex) -> Result<Configuration> {
        self.check_host(g)?;
        g.check(from)?;
        g.check(to)?;
        if !g.adjacent(from, to) {
            return Err(Error::NotAdjacent(from, to));
        }
        if self.counts[from] < 2 {
            return Err(Error::NotEnoughPebbles(from));
        }
        let mut next = self.clone();
        next.counts[from] -= 2;
        next.counts[to] += 1;
        Ok(next)
    }

    /// Replays a move sequence.
    pub fn apply_moves(&self, g: &Graph, moves: &[(Vertex, Vertex)]) -> Result<Configuration> {
        let mut c = self.clone();
        for &(a, b) in moves {
            c = c.apply_move(g, a, b)?;
        }
        Ok(c)
    }

    /// `sum_v C(v) 2^{-d(v,r)}`, exactly.
    pub fn r_weight(&self, g: &Graph, r: Vertex) -> Result<Rational> {
        self.check_host(g)?;
        g.check(r)?;
        Ok(weight_with_distances(&self.counts, g.dist_row(r)))
    }

    /// Parses sparse `vertex count` lines; vertices by label or id.
    pub fn parse(g: &Graph, text: &str) -> Result<Configuration> {
        let mut c = Self::empty(g.n());
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [v, k] = toks[..] else {
                return Err(parse_err(i + 1, format!("expected \"vertex count\", got {line:?}")));
            };
            let v = g.vertex(v).map_err(|_| parse_err(i + 1, format!("unknown vertex {v:?}")))?;
            let k: u32 = k
                .parse()
                .map_err(|_| parse_err(i + 1, format!("bad pebble count {k:?}")))?;
            c.counts[v] += k;
        }
        Ok(c)
    }

    /// Sparse text form in vertex order, zero counts omitted.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for v in self.support() {
            let _ = writeln!(out, "{} {}", g.label(v), self.counts[v]);
        }
        out
    }

    /// Compact one-line form such as `{a13:85, a14:85}`.
    pub fn describe(&self, g: &Graph) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|v| format!("{}:{}", g.label(v), self.counts[v]))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Exact weight of `counts` against a distance row; unreachable vertices
/// (distance `u32::MAX`) contribute nothing.
pub fn weight_with_distances(counts: &[u32], dist: &[u32]) -> Rational {
    let mut total = Rational::zero();
    for (&k, &d) in counts.iter().zip(dist) {
        if k == 0 || d == crate::graph::UNREACHABLE {
            continue;
        }
        let den = BigInt::one() << (d as usize);
        total += Rational::new(BigInt::from(k), den);
    }
    total
}

/// The SNL configuration `C*_{u,v}` for radii `a` (around `u`) and `b`
/// (around `v`): `2^{a+b+1}-1` on `v`, nothing else inside either ball,
/// one pebble everywhere outside both.
pub fn snl_config(g: &Graph, u: Vertex, v: Vertex, a: u32, b: u32) -> Result<Configuration> {
    let bu = g.ball(u, a)?;
    let bv = g.ball(v, b)?;
    if bu.iter().any(|x| bv.contains(x)) {
        return Err(Error::SnlHypothesis { u, v, a, b });
    }
    let exp = a + b + 1;
    if exp >= 32 {
        return Err(Error::OutOfRange(format!("2^{exp} pebbles")));
    }
    let mut c = Configuration::from_counts(vec![1; g.n()]);
    for &x in bu.iter().chain(&bv) {
        c.counts[x] = 0;
    }
    c.counts[v] = (1u32 << exp) - 1;
    Ok(c)
}

/// Size of `C*` from the ball sizes alone.
pub fn snl_size(n: usize, a: u32, b: u32, ball_u: usize, ball_v: usize) -> u64 {
    (1u64 << (a + b + 1)) - 1 + (n - ball_u - ball_v) as u64
}
