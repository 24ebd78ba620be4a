//! The three-strategy patterns for flower snarks of any size.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::families::Flower;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::wfl::{infer_strategy_tree, StrategySet};
use crate::Rational;

/// The three vertex orbits of `J_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JmRoot {
    Z0,
    V0,
    X0,
}

impl JmRoot {
    /// Smallest `k` for which the pattern is defined.
    pub fn min_k(self) -> i64 {
        match self {
            JmRoot::Z0 => 2,
            JmRoot::V0 => 3,
            JmRoot::X0 => 4,
        }
    }
}

impl fmt::Display for JmRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JmRoot::Z0 => "z0",
            JmRoot::V0 => "v0",
            JmRoot::X0 => "x0",
        })
    }
}

impl FromStr for JmRoot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z0" => Ok(JmRoot::Z0),
            "v0" => Ok(JmRoot::V0),
            "x0" => Ok(JmRoot::X0),
            _ => Err(Error::OutOfRange(format!("flower root must be z0, v0 or x0, got {s:?}"))),
        }
    }
}

type Weights = Vec<(Vertex, u64)>;

fn p2(e: i64) -> u64 {
    1u64 << e
}

fn z0_pattern(f: &Flower) -> [Weights; 3] {
    let k = f.k();
    let mut t0 = Vec::new();
    for i in 0..=k {
        t0.push((f.v(i), p2(k + 2 - i)));
        if i > 0 {
            t0.push((f.v(-i), p2(k + 2 - i)));
        }
    }
    for i in 1..=k - 2 {
        t0.push((f.z(i), 5));
        t0.push((f.z(-i), 5));
    }
    t0.extend([(f.z(k - 1), 4), (f.z(-(k - 1)), 4), (f.z(k), 2), (f.z(-k), 2)]);
    t0.extend([(f.x(k), 1), (f.y(k), 1), (f.x(-k), 1), (f.y(-k), 1)]);

    // the pebble on the far z of the petal sits at index 1 when k = 2
    let near = |sign: i64| if k == 2 { sign } else { -sign * (k - 1) };
    let side = |leg: &dyn Fn(i64) -> Vertex, s: i64| {
        let mut t = Vec::new();
        for i in 0..=k {
            t.push((leg(i), p2(k + 2 - i)));
            if i > 0 {
                t.push((leg(-i), p2(k + 2 - i)));
            }
        }
        t.extend([(f.z(s * k), 2), (f.v(s * k), 1), (f.z(-s * k), 1), (f.z(near(s)), 1)]);
        t
    };
    let t1 = side(&|i| f.x(i), 1);
    let tm1 = side(&|i| f.y(i), -1);
    [t0, t1, tm1]
}

fn v0_pattern(f: &Flower) -> [Weights; 3] {
    let k = f.k();
    let mut t0 = vec![(f.z(0), p2(k + 2)), (f.x(0), p2(k + 1)), (f.y(0), p2(k + 1))];
    for j in 1..=k {
        for s in [1, -1] {
            t0.push((f.x(s * j), p2(k + 1 - j)));
            t0.push((f.y(s * j), p2(k + 1 - j)));
        }
    }
    t0.extend([(f.z(1), 4), (f.z(-1), 4), (f.z(k), 1), (f.z(-k), 1)]);
    let side = |s: i64| {
        let mut t: Weights = (1..=k).map(|j| (f.v(s * j), p2(k + 3 - j))).collect();
        t.push((f.z(s), 1));
        t.extend((2..k).map(|j| (f.z(s * j), 5)));
        t.push((f.z(s * k), 4));
        t.extend([(f.x(s * (k - 1)), 1), (f.y(s * (k - 1)), 1)]);
        t.extend([(f.x(s * k), 2), (f.y(s * k), 2), (f.x(-s * k), 1), (f.y(-s * k), 1)]);
        t
    };
    [t0, side(1), side(-1)]
}

fn x0_pattern(f: &Flower) -> [Weights; 3] {
    let k = f.k();
    let mut t0 = vec![(f.z(0), p2(k + 2)), (f.v(0), p2(k + 1)), (f.y(0), p2(k + 1))];
    for j in 1..k {
        for s in [1, -1] {
            t0.push((f.v(s * j), p2(k + 1 - j)));
            t0.push((f.y(s * j), p2(k + 1 - j)));
        }
    }
    t0.extend([(f.v(k), 2), (f.v(-k), 2), (f.y(k), 2), (f.y(-k), 1), (f.z(k), 1)]);

    let mut t1: Weights = (1..=k).map(|j| (f.x(j), p2(k + 3 - j))).collect();
    t1.extend([(f.z(1), 5), (f.z(2), p2(k))]);
    t1.extend((3..k).map(|j| (f.z(j), 5)));
    t1.extend([(f.z(k), 4), (f.v(k - 1), 1), (f.y(-k), 2), (f.z(-k), 1)]);
    t1.extend([(f.y(k), 1), (f.v(k), 2), (f.v(-k), 1)]);

    let mut tm1: Weights = (1..=k).map(|j| (f.x(-j), p2(k + 3 - j))).collect();
    tm1.extend([(f.z(-1), 5), (f.z(-2), p2(k)), (f.v(-2), p2(k - 1))]);
    tm1.extend((3..k).map(|j| (f.z(-j), 5)));
    tm1.extend([(f.z(-k), 4), (f.v(-(k - 1)), 1), (f.y(-(k - 1)), 1)]);
    tm1.extend([(f.y(k - 1), 1), (f.y(k), 2), (f.v(-k), 2), (f.v(k), 1)]);
    [t0, t1, tm1]
}

/// The generated set for `J_m` with the given root, trees inferred from
/// the weights and validated.
pub fn generate_jm_strategies(m: usize, root: JmRoot) -> Result<(Graph, StrategySet)> {
    let f = Flower::new(m)?;
    if f.k() < root.min_k() {
        return Err(Error::OutOfRange(format!(
            "{root} pattern needs m >= {}, got {m}",
            2 * root.min_k() + 1
        )));
    }
    let g = f.graph()?;
    let (r, lists) = match root {
        JmRoot::Z0 => (f.z(0), z0_pattern(&f)),
        JmRoot::V0 => (f.v(0), v0_pattern(&f)),
        JmRoot::X0 => (f.x(0), x0_pattern(&f)),
    };
    let mut strategies = Vec::with_capacity(3);
    for (name, list) in ["T0", "T1", "T-1"].into_iter().zip(lists) {
        let mut w: BTreeMap<Vertex, Rational> = BTreeMap::new();
        for (v, x) in list {
            let prev = w.insert(v, Rational::from_integer(BigInt::from(x)));
            debug_assert!(prev.is_none(), "{} listed twice in {name}", g.label(v));
        }
        strategies.push(infer_strategy_tree(&g, r, &w, name)?);
    }
    let set = StrategySet::new(format!("j{m}-{root}-generated"), format!("flower:{m}"), r, strategies)?;
    Ok((g, set))
}

/// Closed form of the z0 aggregate numerator: `9 * 2^(k+2) + 10k - 18`.
pub fn z0_total(k: u32) -> u64 {
    9 * (1u64 << (k + 2)) + 10 * k as u64 - 18
}

/// Right-hand side shared by the v0 and x0 patterns:
/// `3 * 2^(k+2) + 6 (2^3 + ... + 2^(k+1)) + 5 (2k + 6)`.
pub fn v0_x0_limit(k: u32) -> u64 {
    let geo: u64 = (3..=k + 1).map(|e| 1u64 << e).sum();
    3 * (1u64 << (k + 2)) + 6 * geo + 5 * (2 * k as u64 + 6)
}

/// Upper bound for `J_m`: `floor(2^(k+2) 9/5 + 2k - 18/5) + 1`.
pub fn flower_upper(k: u32) -> u64 {
    z0_total(k) / 5 + 1
}

/// Lower bound for `J_m` from the SNL configuration: `2^(k+2) + 9`.
pub fn flower_lower(k: u32) -> u64 {
    (1u64 << (k + 2)) + 9
}
