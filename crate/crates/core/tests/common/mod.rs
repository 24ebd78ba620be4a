// Random instances and the checks shared by the property tests and the
// acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use pebbling::solver::{Pruning, SolveOptions, Solver};
use pebbling::wfl::{strategy_weight, StrategySet};
use pebbling::{Configuration, Graph, Rational, Vertex};
use proptest::prelude::*;
use proptest::sample::Index;

#[derive(Clone, Debug)]
pub struct Instance {
    pub g: Graph,
    pub r: Vertex,
    pub c: Configuration,
}

/// Connected graph on `2..=max_n` vertices: a random tree plus a few chords.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<Index>(), n - 1), prop::collection::vec((0..n, 0..n), 0..=n)))
        .prop_map(|(n, tree, chords)| {
            let mut edges = BTreeSet::new();
            for (i, p) in tree.iter().enumerate() {
                let v = i + 1;
                edges.insert((p.index(v), v));
            }
            for (u, v) in chords {
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
            }
            Graph::new(n, edges).expect("tree plus chords is a simple connected graph")
        })
}

fn place(n: usize, spots: &[Index]) -> Configuration {
    let mut c = Configuration::empty(n);
    for s in spots {
        c.add(s.index(n), 1);
    }
    c
}

/// A graph, a target and up to `max_size` pebbles.
pub fn instance(max_n: usize, max_size: usize) -> impl Strategy<Value = Instance> {
    (graph(max_n), any::<Index>(), prop::collection::vec(any::<Index>(), 0..=max_size)).prop_map(|(g, r, spots)| {
        let r = r.index(g.n());
        let c = place(g.n(), &spots);
        Instance { g, r, c }
    })
}

/// An instance together with a pointwise larger configuration.
pub fn instance_pair(max_n: usize, max_size: usize) -> impl Strategy<Value = (Instance, Configuration)> {
    (instance(max_n, max_size), prop::collection::vec(any::<Index>(), 1..=8)).prop_map(|(inst, more)| {
        let mut big = inst.c.clone();
        for s in &more {
            big.add(s.index(inst.g.n()), 1);
        }
        (inst, big)
    })
}

/// Solves exactly and, when solvable, replays the witness.
/// Returns the verdict and whether a witness was replayed.
pub fn solve_replayed(g: &Graph, r: Vertex, c: &Configuration, pruning: Pruning) -> Result<(bool, bool), String> {
    let opts = SolveOptions {
        pruning,
        ..SolveOptions::default()
    };
    let res = Solver::new(g, r, opts).and_then(|s| s.solve(c)).map_err(|e| e.to_string())?;
    match res.solvable() {
        Some(true) => {
            let moves = res.witness.ok_or("solvable verdict without a witness")?;
            let end = c.apply_moves(g, &moves).map_err(|e| format!("witness does not replay: {e}"))?;
            if end.get(r) == 0 {
                return Err(format!("witness of {} moves leaves the target empty", moves.len()));
            }
            Ok((true, true))
        }
        Some(false) => Ok((false, false)),
        None => Err("unlimited solve returned unknown".into()),
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Tally {
    pub cases: usize,
    pub solvable: usize,
    pub replayed: usize,
}

impl Tally {
    pub fn note(&mut self, solvable: bool, replayed: bool) {
        self.solvable += solvable as usize;
        self.replayed += replayed as usize;
    }
}

/// Adding pebbles never breaks solvability.
pub fn check_monotone(inst: &Instance, big: &Configuration, tally: &mut Tally) -> Result<(), String> {
    let (small_ok, w1) = solve_replayed(&inst.g, inst.r, &inst.c, Pruning::default())?;
    let (big_ok, w2) = solve_replayed(&inst.g, inst.r, big, Pruning::default())?;
    tally.cases += 1;
    tally.note(small_ok, w1);
    tally.note(big_ok, w2);
    if small_ok && !big_ok {
        return Err(format!("{} solvable but {} is not", inst.c.describe(&inst.g), big.describe(&inst.g)));
    }
    Ok(())
}

/// Every pruning rule agrees with plain search.
pub fn check_pruning(inst: &Instance, tally: &mut Tally) -> Result<(), String> {
    let (plain, w) = solve_replayed(&inst.g, inst.r, &inst.c, Pruning::None)?;
    tally.cases += 1;
    tally.note(plain, w);
    for p in [Pruning::Weight, Pruning::Neighbourhood { depth: 1 }, Pruning::Neighbourhood { depth: 2 }] {
        let (v, w) = solve_replayed(&inst.g, inst.r, &inst.c, p)?;
        tally.note(v, w);
        if v != plain {
            return Err(format!("{p:?} says {v}, plain search says {plain} for {}", inst.c.describe(&inst.g)));
        }
    }
    Ok(())
}

/// An unsolvable configuration weighs at most the tree value of each strategy.
pub fn check_wfl(g: &Graph, sets: &[StrategySet], c: &Configuration, tally: &mut Tally) -> Result<(), String> {
    for set in sets {
        let (ok, w) = solve_replayed(g, set.root, c, Pruning::default())?;
        tally.cases += 1;
        tally.note(ok, w);
        if ok {
            continue;
        }
        for s in &set.strategies {
            let lhs = strategy_weight(g, s, c).map_err(|e| e.to_string())?;
            if lhs > s.tvalue() {
                return Err(format!("{}: w(C) = {lhs} > w(T) = {} for {}", s.name, s.tvalue(), c.describe(g)));
            }
        }
    }
    Ok(())
}

/// Solves `A x = b` exactly; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let k = b.len();
    for col in 0..k {
        let piv = (col..k).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for i in 0..k {
            if i != col && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[col][col];
                for j in col..k {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                }
                let t = &f * &b[col];
                b[i] -= t;
            }
        }
    }
    Some((0..k).map(|i| &b[i] / &a[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximum of `sum x` over `{x >= 0, A x <= b}` by enumerating basic
/// feasible solutions. A vertex of this polytope has at most `rows`
/// nonzero coordinates, each fixed by as many tight rows.
pub fn brute_force_lp(a: &[Vec<Rational>], b: &[Rational]) -> Rational {
    let m = a.len();
    let nv = a.first().map_or(0, Vec::len);
    let mut best = Rational::zero();
    for k in 1..=m.min(nv) {
        for rows in subsets(m, k) {
            for cols in subsets(nv, k) {
                let sub: Vec<Vec<Rational>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
                let rhs: Vec<Rational> = rows.iter().map(|&i| b[i].clone()).collect();
                let Some(xs) = solve_square(sub, rhs) else { continue };
                if xs.iter().any(|x| x.is_negative()) {
                    continue;
                }
                let mut x = vec![Rational::zero(); nv];
                for (&j, v) in cols.iter().zip(&xs) {
                    x[j] = v.clone();
                }
                let feasible = (0..m).all(|i| a[i].iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>() <= b[i]);
                if feasible {
                    let obj: Rational = x.iter().sum();
                    if obj > best {
                        best = obj;
                    }
                }
            }
        }
    }
    best
}

/// The LP of a strategy set in the form `brute_force_lp` takes.
pub fn lp_rows(g: &Graph, set: &StrategySet) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let vars: Vec<Vertex> = g.vertices().filter(|&v| v != set.root).collect();
    let a = set.strategies.iter().map(|s| vars.iter().map(|&v| s.weight(v)).collect()).collect();
    let b = set.strategies.iter().map(|s| s.tvalue()).collect();
    (a, b)
}
