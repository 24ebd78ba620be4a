//! Deciding r-solvability by memoised depth-first search over configurations.

mod bound;
mod memo;
mod pi;

use std::time::{Duration, Instant};

pub use bound::ReachBound;
pub use pi::{pi, pi_target, relaxation_bound, relaxation_bound_with, PiOptions, PiResult, Progress, ProgressEvent, RelaxationBound, TargetPi};

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::pebbling::Configuration;
use memo::Memo;

/// Node and wall-clock limits; whichever runs out first stops the search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(n: u64) -> Self {
        Self {
            max_nodes: Some(n),
            time: None,
        }
    }

    pub fn seconds(s: f64) -> Self {
        Self {
            max_nodes: None,
            time: Some(Duration::from_secs_f64(s)),
        }
    }

    pub fn is_limited(&self) -> bool {
        self.max_nodes.is_some() || self.time.is_some()
    }

    pub(crate) fn deadline(&self, start: Instant) -> Option<Instant> {
        self.time.map(|t| start + t)
    }
}

/// Which unsolvability proofs may cut the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    /// Plain exhaustive search.
    None,
    /// Cut states whose r-weight is below 1.
    Weight,
    /// Cut states by the neighbourhood recursion of the given depth.
    Neighbourhood { depth: u32 },
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::Neighbourhood { depth: 2 }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub budget: Budget,
    pub pruning: Pruning,
    /// Upper limit on remembered dead states.
    pub memo_capacity: usize,
    pub want_witness: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            budget: Budget::unlimited(),
            pruning: Pruning::default(),
            memo_capacity: 1 << 24,
            want_witness: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Solvable,
    Unsolvable,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Solvable => "solvable",
            Verdict::Unsolvable => "unsolvable",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    /// Moves `(from, to)` that put a pebble on the target.
    pub witness: Option<Vec<(Vertex, Vertex)>>,
    pub nodes_explored: u64,
    pub budget_exhausted: bool,
}

impl SolveResult {
    /// `None` when the budget ran out.
    pub fn solvable(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Solvable => Some(true),
            Verdict::Unsolvable => Some(false),
            Verdict::Unknown => None,
        }
    }
}

/// Decides whether `c` can put a pebble on `r`, with default pruning.
pub fn is_solvable(g: &Graph, c: &Configuration, r: Vertex, budget: Option<Budget>) -> Result<SolveResult> {
    let opts = SolveOptions {
        budget: budget.unwrap_or_default(),
        ..SolveOptions::default()
    };
    Solver::new(g, r, opts)?.solve(c)
}

/// A solver bound to one graph and target, reusable across configurations.
#[derive(Clone, Debug)]
pub struct Solver<'g> {
    g: &'g Graph,
    r: Vertex,
    opts: SolveOptions,
    bound: Option<ReachBound>,
    /// All directed moves, those approaching `r` first.
    moves: Vec<(Vertex, Vertex)>,
}

impl<'g> Solver<'g> {
    pub fn new(g: &'g Graph, r: Vertex, opts: SolveOptions) -> Result<Self> {
        g.check(r)?;
        let bound = match opts.pruning {
            Pruning::None => None,
            Pruning::Weight => Some(ReachBound::new(g, r, 0)),
            Pruning::Neighbourhood { depth } => Some(ReachBound::new(g, r, depth)),
        };
        let d = g.dist_row(r);
        let mut moves: Vec<(Vertex, Vertex)> = g
            .vertices()
            .filter(|&x| x != r)
            .flat_map(|x| g.neighbors(x).iter().map(move |&y| (x, y)))
            .collect();
        moves.sort_by_key(|&(x, y)| (d[y] as i64 - d[x] as i64, d[x], x, y));
        Ok(Self {
            g,
            r,
            opts,
            bound,
            moves,
        })
    }

    pub fn target(&self) -> Vertex {
        self.r
    }

    pub fn options(&self) -> &SolveOptions {
        &self.opts
    }

    /// Upper bound on pebbles reachable at the target (exact zero test for
    /// the pruning rule in use); `u64::MAX` with pruning disabled.
    pub fn reach_bound(&self, c: &Configuration) -> u64 {
        match &self.bound {
            Some(b) => b.eval(c.counts(), &mut Vec::new()),
            None => u64::MAX,
        }
    }

    pub fn solve(&self, c: &Configuration) -> Result<SolveResult> {
        self.solve_with_budget(c, self.opts.budget)
    }

    pub fn solve_with_budget(&self, c: &Configuration, budget: Budget) -> Result<SolveResult> {
        c.check_host(self.g)?;
        let start = Instant::now();
        let mut s = Search {
            solver: self,
            counts: c.counts().to_vec(),
            memo: Memo::new(self.opts.memo_capacity),
            path: Vec::new(),
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget.deadline(start),
            scratch: Vec::new(),
        };
        let out = s.dfs();
        let (verdict, exhausted) = match out {
            Outcome::Solved => (Verdict::Solvable, false),
            Outcome::Dead => (Verdict::Unsolvable, false),
            Outcome::OutOfBudget => (Verdict::Unknown, true),
        };
        let witness = (verdict == Verdict::Solvable && self.opts.want_witness).then(|| s.path.clone());
        Ok(SolveResult {
            verdict,
            witness,
            nodes_explored: s.nodes,
            budget_exhausted: exhausted,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Solved,
    Dead,
    OutOfBudget,
}

struct Search<'a, 'g> {
    solver: &'a Solver<'g>,
    counts: Vec<u32>,
    memo: Memo,
    path: Vec<(Vertex, Vertex)>,
    nodes: u64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    scratch: Vec<u64>,
}

impl Search<'_, '_> {
    fn dfs(&mut self) -> Outcome {
        let r = self.solver.r;
        if self.counts[r] > 0 {
            return Outcome::Solved;
        }
        self.nodes += 1;
        if let Some(m) = self.max_nodes {
            if self.nodes > m {
                return Outcome::OutOfBudget;
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Outcome::OutOfBudget;
                }
            }
        }
        if let Some(b) = &self.solver.bound {
            if b.eval(&self.counts, &mut self.scratch) == 0 {
                return Outcome::Dead;
            }
        }
        if self.memo.contains(&self.counts) {
            return Outcome::Dead;
        }
        let moves = &self.solver.moves;
        for i in 0..moves.len() {
            let (x, y) = moves[i];
            if self.counts[x] < 2 {
                continue;
            }
            self.counts[x] -= 2;
            self.counts[y] += 1;
            self.path.push((x, y));
            let out = self.dfs();
            if out == Outcome::Solved {
                return out;
            }
            self.path.pop();
            self.counts[x] += 2;
            self.counts[y] -= 1;
            if out == Outcome::OutOfBudget {
                return out;
            }
        }
        self.memo.insert(&self.counts);
        Outcome::Dead
    }
}
