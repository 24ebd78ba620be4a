//! Exact pebbling numbers by branch and bound over unsolvable configurations.
//!
//! Unsolvable configurations form a down-set, so the search only needs the
//! largest one. Counts are assigned vertex by vertex, farthest from the
//! target first, each from its largest unsolvable value downward. Every
//! partial assignment is itself unsolvable, which makes each node a
//! candidate. Nodes are cut with Lagrangian bounds taken from an exact LP
//! over path strategies (any unsolvable `C` obeys `sum w_T C <= sum w_T`).

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Budget, Pruning, SolveOptions, Solver, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lp;
use crate::pebbling::Configuration;
use crate::wfl::Strategy;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProgressEvent {
    Incumbent { target: Vertex, size: u64 },
    TargetDone { target: Vertex, value: u64, exhaustive: bool },
}

pub type Progress = Arc<dyn Fn(&ProgressEvent) + Send + Sync>;

#[derive(Clone)]
pub struct PiOptions {
    /// Limit for the whole search (per target).
    pub budget: Budget,
    /// Pruning used by the solvability checks.
    pub pruning: Pruning,
    pub workers: usize,
    /// Shuffles ties in the vertex order; results must not depend on it.
    pub order_seed: Option<u64>,
    pub progress: Option<Progress>,
}

impl Default for PiOptions {
    fn default() -> Self {
        Self {
            budget: Budget::unlimited(),
            pruning: Pruning::default(),
            workers: 1,
            order_seed: None,
            progress: None,
        }
    }
}

impl std::fmt::Debug for PiOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PiOptions")
            .field("budget", &self.budget)
            .field("pruning", &self.pruning)
            .field("workers", &self.workers)
            .field("order_seed", &self.order_seed)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetPi {
    pub target: Vertex,
    pub value: u64,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiResult {
    /// Exact when `exhaustive`, otherwise a certified lower bound.
    pub value: u64,
    /// A largest unsolvable configuration found for `target`.
    pub extremal_config: Configuration,
    pub exhaustive: bool,
    pub target: Vertex,
    pub nodes_explored: u64,
    pub per_target: Vec<TargetPi>,
}

/// `pi(G)`: maximum of `pi_target` over `roots` (all vertices if `None`).
pub fn pi(g: &Graph, roots: Option<&[Vertex]>, opts: &PiOptions) -> Result<PiResult> {
    let all: Vec<Vertex> = match roots {
        Some(r) => r.to_vec(),
        None => g.vertices().collect(),
    };
    if all.is_empty() {
        return Err(Error::OutOfRange("no roots given".into()));
    }
    let results: Vec<PiResult> = if opts.workers > 1 {
        let pool = pool(opts.workers)?;
        pool.install(|| all.par_iter().map(|&r| pi_target(g, r, opts)).collect::<Result<_>>())?
    } else {
        all.iter().map(|&r| pi_target(g, r, opts)).collect::<Result<_>>()?
    };
    let mut best = 0;
    for (i, res) in results.iter().enumerate() {
        if res.value > results[best].value {
            best = i;
        }
    }
    let per_target = results
        .iter()
        .map(|r| TargetPi {
            target: r.target,
            value: r.value,
            exhaustive: r.exhaustive,
        })
        .collect();
    let nodes = results.iter().map(|r| r.nodes_explored).sum();
    let exhaustive = results.iter().all(|r| r.exhaustive);
    let top = results[best].clone();
    Ok(PiResult {
        value: top.value,
        extremal_config: top.extremal_config,
        exhaustive,
        target: top.target,
        nodes_explored: nodes,
        per_target,
    })
}

/// `pi(G, r)` by branch and bound.
pub fn pi_target(g: &Graph, r: Vertex, opts: &PiOptions) -> Result<PiResult> {
    g.check(r)?;
    let start = Instant::now();
    let plan = Plan::new(g, r, opts)?;

    let mut init = vec![0u32; g.n()];
    let far = plan.order.first().copied();
    let ones = g.n() as u64 - 1;
    let heavy = far.map_or(0, |v| u64::from(plan.cap[v]));
    if ones >= heavy {
        for v in g.vertices().filter(|&v| v != r) {
            init[v] = 1;
        }
    } else if let Some(v) = far {
        init[v] = plan.cap[v];
    }
    let shared = Shared {
        best: AtomicU64::new(ones.max(heavy)),
        cert: Mutex::new(init),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        incomplete: AtomicBool::new(false),
        deadline: opts.budget.deadline(start),
        max_nodes: opts.budget.max_nodes,
        progress: opts.progress.clone(),
        target: r,
    };
    let solver = Solver::new(
        g,
        r,
        SolveOptions {
            pruning: opts.pruning,
            want_witness: false,
            memo_capacity: 1 << 20,
            ..SolveOptions::default()
        },
    )?;

    let mut root = Worker::new(&plan, &solver, &shared);
    if opts.workers > 1 && !plan.order.is_empty() {
        let top = root.max_unsolvable(0);
        let pool = pool(opts.workers)?;
        pool.install(|| {
            (0..=top).into_par_iter().for_each(|c| {
                let mut w = Worker::new(&plan, &solver, &shared);
                w.descend(0, c);
            })
        });
    } else {
        root.branch(0);
    }

    let value = shared.best.load(Ordering::SeqCst) + 1;
    let exhaustive = !shared.aborted.load(Ordering::SeqCst) && !shared.incomplete.load(Ordering::SeqCst);
    let cert = Configuration::from_counts(shared.cert.lock().expect("poisoned").clone());
    if let Some(p) = &opts.progress {
        p(&ProgressEvent::TargetDone {
            target: r,
            value,
            exhaustive,
        });
    }
    Ok(PiResult {
        value,
        extremal_config: cert,
        exhaustive,
        target: r,
        nodes_explored: shared.nodes.load(Ordering::SeqCst),
        per_target: vec![TargetPi {
            target: r,
            value,
            exhaustive,
        }],
    })
}

/// Upper bound on `pi(G, r)` from the relaxation used to prune
/// [`pi_target`]: path strategies from `r` (all maximal simple paths when
/// there are few, else maximal geodesics), the breadth-first tree with
/// weights `2^(ecc - d)`, and `C(v) <= 2^d(v) - 1` for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxationBound {
    pub target: Vertex,
    pub optimum: Rational,
    /// `floor(optimum) + 1`.
    pub bound: u64,
    pub strategies: usize,
}

pub fn relaxation_bound(g: &Graph, r: Vertex) -> Result<RelaxationBound> {
    relaxation_bound_with(g, r, &[])
}

/// [`relaxation_bound`] with further valid strategies for `r` added as
/// constraints. Strategies are not validated here.
pub fn relaxation_bound_with(g: &Graph, r: Vertex, extra: &[Strategy]) -> Result<RelaxationBound> {
    g.check(r)?;
    if extra.iter().any(|s| s.root() != r) {
        return Err(Error::RootMismatch);
    }
    let plan = Plan::new(g, r, &PiOptions::default())?;
    let rows: Vec<(Vec<Rational>, Rational)> = extra
        .iter()
        .map(|s| (plan.order.iter().map(|&v| s.weight(v)).collect(), s.tvalue()))
        .collect();
    let optimum = match plan.root_lp_with(&rows) {
        Some(sol) => sol.value,
        None => Rational::zero(),
    };
    let bound = (optimum.floor().to_integer() + 1u32).to_u64().unwrap_or(u64::MAX);
    Ok(RelaxationBound {
        target: r,
        optimum,
        bound,
        strategies: plan.strategies.len() + extra.len(),
    })
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Io(e.to_string()))
}

/// Static data for one target.
struct Plan {
    n: usize,
    order: Vec<Vertex>,
    cap: Vec<u32>,
    /// Path strategies: weights per vertex and their total.
    strategies: Vec<(Vec<u64>, u64)>,
    /// Integer multiplier vectors with common scale `scale`.
    multipliers: Vec<Multiplier>,
}

struct Multiplier {
    lambda: Vec<i128>,
    scale: i128,
    /// `suffix[i]`: sum over `order[i..]` of `max(0, scale - a_v) * cap_v`.
    suffix: Vec<i128>,
}

const MAX_PATHS: usize = 64;

impl Plan {
    fn new(g: &Graph, r: Vertex, opts: &PiOptions) -> Result<Self> {
        let d = g.dist_row(r);
        let mut order: Vec<Vertex> = g.vertices().filter(|&v| v != r).collect();
        let seed = opts.order_seed;
        order.sort_by_key(|&v| (std::cmp::Reverse(d[v]), seed.map_or(v as u64, |s| mix(s ^ v as u64))));
        let mut cap = vec![0u32; g.n()];
        for &v in &order {
            if d[v] >= 32 {
                return Err(Error::OutOfRange(format!("distance {} too large for exhaustive search", d[v])));
            }
            cap[v] = (1u32 << d[v]) - 1;
        }

        let mut strategies: Vec<(Vec<u64>, u64)> = Vec::new();
        for path in strategy_paths(g, r) {
            let len = path.len() as u32 - 1;
            if len >= 62 {
                continue;
            }
            let mut w = vec![0u64; g.n()];
            for (i, &v) in path.iter().enumerate().skip(1) {
                w[v] = 1u64 << (len - i as u32);
            }
            strategies.push((w, (1u64 << len) - 1));
        }
        // BFS tree strategy: weight 2^{ecc - d}.
        let ecc = g.eccentricity(r);
        if ecc < 62 {
            let w: Vec<u64> = g
                .vertices()
                .map(|v| if v == r { 0 } else { 1u64 << (ecc - d[v]) })
                .collect();
            let t = w.iter().sum();
            strategies.push((w, t));
        }

        let mut plan = Plan {
            n: g.n(),
            order,
            cap,
            strategies,
            multipliers: Vec::new(),
        };
        plan.build_multipliers();
        Ok(plan)
    }

    fn build_multipliers(&mut self) {
        let k = self.strategies.len();
        let mut lambdas: Vec<(Vec<i128>, i128)> = Vec::new();
        if let Some(dual) = self.root_dual() {
            let scale = dual.iter().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
            if let Some(scale) = scale.to_i128() {
                let lam: Option<Vec<i128>> = dual
                    .iter()
                    .map(|q| (q.numer() * (scale / q.denom())).to_i128())
                    .collect();
                if let Some(lam) = lam {
                    lambdas.push((lam, scale));
                }
            }
        }
        for t in 0..k {
            let mut lam = vec![0i128; k];
            lam[t] = 1;
            lambdas.push((lam, 1));
        }
        for (lambda, scale) in lambdas {
            let mut suffix = vec![0i128; self.order.len() + 1];
            for i in (0..self.order.len()).rev() {
                let v = self.order[i];
                let a: i128 = self
                    .strategies
                    .iter()
                    .zip(&lambda)
                    .map(|((w, _), &l)| l * w[v] as i128)
                    .sum();
                suffix[i] = suffix[i + 1] + (scale - a).max(0) * self.cap[v] as i128;
            }
            self.multipliers.push(Multiplier { lambda, scale, suffix });
        }
    }

    /// Dual multipliers of the strategy rows in the root LP.
    fn root_dual(&self) -> Option<Vec<Rational>> {
        let sol = self.root_lp()?;
        Some(sol.dual[..self.strategies.len()].to_vec())
    }

    /// `max sum C  s.t.  path strategies, C <= cap`.
    fn root_lp(&self) -> Option<lp::LpSolution> {
        self.root_lp_with(&[])
    }

    /// `extra` rows are indexed like `order`.
    fn root_lp_with(&self, extra: &[(Vec<Rational>, Rational)]) -> Option<lp::LpSolution> {
        let m = self.order.len();
        if m == 0 || self.strategies.is_empty() {
            return None;
        }
        let int = |x: u64| Rational::from_integer(x.into());
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (w, t) in &self.strategies {
            a.push(self.order.iter().map(|&v| int(w[v])).collect());
            b.push(int(*t));
        }
        for (w, t) in extra {
            a.push(w.clone());
            b.push(t.clone());
        }
        for (i, &v) in self.order.iter().enumerate() {
            let mut row = vec![Rational::zero(); m];
            row[i] = int(1);
            a.push(row);
            b.push(int(u64::from(self.cap[v])));
        }
        let c = vec![int(1); m];
        lp::maximize(&c, &a, &b).ok()
    }
}

/// Maximal simple paths from `r` when few enough, else maximal geodesics.
fn strategy_paths(g: &Graph, r: Vertex) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut path = vec![r];
    let mut on = vec![false; g.n()];
    on[r] = true;
    if simple_paths(g, &mut path, &mut on, &mut out, MAX_PATHS + 1) && out.len() <= MAX_PATHS {
        return out;
    }
    out.clear();
    let d = g.dist_row(r);
    let mut path = vec![r];
    geodesics(g, d, &mut path, &mut out);
    out
}

fn simple_paths(g: &Graph, path: &mut Vec<Vertex>, on: &mut [bool], out: &mut Vec<Vec<Vertex>>, limit: usize) -> bool {
    let x = *path.last().expect("path starts at the root");
    let mut extended = false;
    for &y in g.neighbors(x) {
        if on[y] {
            continue;
        }
        extended = true;
        on[y] = true;
        path.push(y);
        let ok = simple_paths(g, path, on, out, limit);
        path.pop();
        on[y] = false;
        if !ok {
            return false;
        }
    }
    if !extended && path.len() > 1 {
        out.push(path.clone());
    }
    out.len() < limit
}

fn geodesics(g: &Graph, d: &[u32], path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if out.len() >= MAX_PATHS {
        return;
    }
    let x = *path.last().expect("path starts at the root");
    let mut extended = false;
    for &y in g.neighbors(x) {
        if d[y] == d[x] + 1 {
            extended = true;
            path.push(y);
            geodesics(g, d, path, out);
            path.pop();
        }
    }
    if !extended && path.len() > 1 && out.len() < MAX_PATHS {
        out.push(path.clone());
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Shared {
    best: AtomicU64,
    cert: Mutex<Vec<u32>>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    incomplete: AtomicBool,
    deadline: Option<Instant>,
    max_nodes: Option<u64>,
    progress: Option<Progress>,
    target: Vertex,
}

impl Shared {
    fn offer(&self, size: u64, counts: &[u32]) {
        let mut cert = self.cert.lock().expect("poisoned");
        if size > self.best.load(Ordering::SeqCst) {
            self.best.store(size, Ordering::SeqCst);
            cert.copy_from_slice(counts);
            if let Some(p) = &self.progress {
                p(&ProgressEvent::Incumbent {
                    target: self.target,
                    size,
                });
            }
        }
    }

    fn out_of_budget(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return true;
        }
        let over_nodes = self.max_nodes.is_some_and(|m| self.nodes.load(Ordering::Relaxed) > m);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::SeqCst);
            return true;
        }
        false
    }

    fn remaining(&self) -> Budget {
        Budget {
            max_nodes: self
                .max_nodes
                .map(|m| m.saturating_sub(self.nodes.load(Ordering::Relaxed)).max(1)),
            time: self.deadline.map(|d| d.saturating_duration_since(Instant::now())),
        }
    }
}

struct Worker<'a> {
    plan: &'a Plan,
    solver: &'a Solver<'a>,
    shared: &'a Shared,
    counts: Vec<u32>,
    residual: Vec<i128>,
    size: u64,
}

impl<'a> Worker<'a> {
    fn new(plan: &'a Plan, solver: &'a Solver<'a>, shared: &'a Shared) -> Self {
        Self {
            plan,
            solver,
            shared,
            counts: vec![0; plan.n],
            residual: plan.strategies.iter().map(|(_, t)| *t as i128).collect(),
            size: 0,
        }
    }

    /// Largest remaining pebble total allowed by the multipliers.
    fn bound(&self, i: usize) -> u64 {
        let mut best = i128::MAX;
        for m in &self.plan.multipliers {
            let mut s = m.suffix[i];
            for (l, r) in m.lambda.iter().zip(&self.residual) {
                if *l != 0 {
                    s += l * r;
                }
            }
            best = best.min(s.div_euclid(m.scale));
        }
        best.max(0) as u64
    }

    /// Largest `c` such that the partial assignment plus `c` pebbles on
    /// `order[i]` is unsolvable (binary search; unsolvability is downward
    /// closed).
    fn max_unsolvable(&mut self, i: usize) -> u32 {
        let v = self.plan.order[i];
        let mut hi = self.plan.cap[v];
        for ((w, _), r) in self.plan.strategies.iter().zip(&self.residual) {
            if w[v] > 0 {
                hi = hi.min((*r / w[v] as i128).clamp(0, u32::MAX as i128) as u32);
            }
        }
        let mut lo = 0;
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if self.unsolvable_with(v, mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo
    }

    fn unsolvable_with(&mut self, v: Vertex, c: u32) -> bool {
        self.counts[v] = c;
        let conf = Configuration::from_counts(self.counts.clone());
        self.counts[v] = 0;
        if self.solver.reach_bound(&conf) == 0 {
            return true;
        }
        let res = self
            .solver
            .solve_with_budget(&conf, self.shared.remaining())
            .expect("host checked");
        self.shared.nodes.fetch_add(res.nodes_explored, Ordering::Relaxed);
        match res.verdict {
            Verdict::Unsolvable => true,
            Verdict::Solvable => false,
            Verdict::Unknown => {
                self.shared.incomplete.store(true, Ordering::SeqCst);
                false
            }
        }
    }

    fn branch(&mut self, i: usize) {
        if i == self.plan.order.len() || self.shared.out_of_budget() {
            return;
        }
        self.shared.nodes.fetch_add(1, Ordering::Relaxed);
        if self.size + self.bound(i) <= self.shared.best.load(Ordering::Relaxed) {
            return;
        }
        let top = self.max_unsolvable(i);
        for c in (0..=top).rev() {
            self.descend(i, c);
            if self.shared.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    /// Fixes `order[i]` to `c` (known unsolvable) and searches below.
    fn descend(&mut self, i: usize, c: u32) {
        let v = self.plan.order[i];
        self.counts[v] = c;
        self.size += u64::from(c);
        for ((w, _), r) in self.plan.strategies.iter().zip(self.residual.iter_mut()) {
            *r -= w[v] as i128 * c as i128;
        }
        if self.size > self.shared.best.load(Ordering::Relaxed) {
            self.shared.offer(self.size, &self.counts);
        }
        self.branch(i + 1);
        for ((w, _), r) in self.plan.strategies.iter().zip(self.residual.iter_mut()) {
            *r += w[v] as i128 * c as i128;
        }
        self.size -= u64::from(c);
        self.counts[v] = 0;
    }
}
