//! Weighted tree strategies and the upper bounds they certify.
//!
//! A strategy is a tree rooted at the target `r` with non-negative weights,
//! `w(r) = 0` and `w(parent) >= 2 w(v)` whenever the parent is not `r`.
//! Every `r`-unsolvable configuration `C` then satisfies
//! `sum_v w(v) C(v) <= sum_v w(v)`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lp;
use crate::pebbling::Configuration;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub name: String,
    root: Vertex,
    parent: BTreeMap<Vertex, Vertex>,
    weights: BTreeMap<Vertex, Rational>,
}

impl Strategy {
    /// Builds a strategy without checking it; see [`validate_strategy`].
    pub fn new(
        name: impl Into<String>,
        root: Vertex,
        parent: BTreeMap<Vertex, Vertex>,
        weights: BTreeMap<Vertex, Rational>,
    ) -> Self {
        Self {
            name: name.into(),
            root,
            parent,
            weights,
        }
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(&v).copied()
    }

    pub fn parents(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.parent
    }

    pub fn weight(&self, v: Vertex) -> Rational {
        self.weights.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<Vertex, Rational> {
        &self.weights
    }

    pub fn in_tree(&self, v: Vertex) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    /// `w(T)`: total weight of the tree.
    pub fn tvalue(&self) -> Rational {
        self.weights
            .iter()
            .filter(|(&v, _)| v != self.root)
            .map(|(_, w)| w.clone())
            .sum()
    }
}

/// `w(T) = sum_{v != r} w(v)`.
pub fn tvalue(s: &Strategy) -> Rational {
    s.tvalue()
}

/// `w(C) = sum_v w(v) C(v)`.
pub fn strategy_weight(g: &Graph, s: &Strategy, c: &Configuration) -> Result<Rational> {
    c.check_host(g)?;
    let mut total = Rational::zero();
    for (&v, w) in &s.weights {
        g.check(v)?;
        total += w * Rational::from_integer(BigInt::from(c.get(v)));
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WflVerdict {
    /// No information.
    Consistent,
    /// The weight exceeds `w(T)`, so `C` is solvable.
    CertifiesSolvable,
}

pub fn wfl_check(g: &Graph, s: &Strategy, c: &Configuration) -> Result<WflVerdict> {
    Ok(if strategy_weight(g, s, c)? > s.tvalue() {
        WflVerdict::CertifiesSolvable
    } else {
        WflVerdict::Consistent
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    InvalidVertex(Vertex),
    RootWeight(Rational),
    RootHasParent,
    NegativeWeight(Vertex),
    WeightOutsideTree(Vertex),
    NotAnEdge { vertex: Vertex, parent: Vertex },
    ParentOutsideTree { vertex: Vertex, parent: Vertex },
    Detached(Vertex),
    Doubling { vertex: Vertex, parent: Vertex, weight: Rational, parent_weight: Rational },
}

impl Violation {
    pub fn describe(&self, g: &Graph) -> String {
        let l = |v: &Vertex| if *v < g.n() { g.label(*v) } else { v.to_string() };
        match self {
            Violation::InvalidVertex(v) => format!("vertex {v} is not in the graph"),
            Violation::RootWeight(w) => format!("root has weight {w}"),
            Violation::RootHasParent => "root has a parent".to_string(),
            Violation::NegativeWeight(v) => format!("{}: negative weight", l(v)),
            Violation::WeightOutsideTree(v) => format!("{}: positive weight outside the tree", l(v)),
            Violation::NotAnEdge { vertex, parent } => {
                format!("{}: parent {} is not adjacent", l(vertex), l(parent))
            }
            Violation::ParentOutsideTree { vertex, parent } => {
                format!("{}: parent {} is not in the tree", l(vertex), l(parent))
            }
            Violation::Detached(v) => format!("{}: parent chain does not reach the root", l(v)),
            Violation::Doubling {
                vertex,
                parent,
                weight,
                parent_weight,
            } => format!(
                "{}: w({}) = {} < 2 * {}",
                l(vertex),
                l(parent),
                parent_weight,
                weight
            ),
        }
    }
}

/// Every broken strategy invariant; empty iff the strategy is valid.
pub fn validate_strategy(g: &Graph, s: &Strategy) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = g.n();
    if s.root >= n {
        out.push(Violation::InvalidVertex(s.root));
        return out;
    }
    for (&v, &p) in &s.parent {
        for x in [v, p] {
            if x >= n {
                out.push(Violation::InvalidVertex(x));
            }
        }
    }
    for &v in s.weights.keys() {
        if v >= n {
            out.push(Violation::InvalidVertex(v));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let rw = s.weight(s.root);
    if !rw.is_zero() {
        out.push(Violation::RootWeight(rw));
    }
    if s.parent.contains_key(&s.root) {
        out.push(Violation::RootHasParent);
    }
    for (&v, w) in &s.weights {
        if w.is_negative() {
            out.push(Violation::NegativeWeight(v));
        } else if w.is_positive() && !s.in_tree(v) {
            out.push(Violation::WeightOutsideTree(v));
        }
    }
    for (&v, &p) in &s.parent {
        if v == s.root {
            continue;
        }
        if !g.adjacent(v, p) {
            out.push(Violation::NotAnEdge { vertex: v, parent: p });
        }
        if !s.in_tree(p) {
            out.push(Violation::ParentOutsideTree { vertex: v, parent: p });
            continue;
        }
        let mut x = v;
        let mut steps = 0;
        while x != s.root && steps <= s.parent.len() {
            match s.parent.get(&x) {
                Some(&y) => x = y,
                None => break,
            }
            steps += 1;
        }
        if x != s.root {
            out.push(Violation::Detached(v));
        }
        if p != s.root {
            let (wv, wp) = (s.weight(v), s.weight(p));
            if wp < &wv * Rational::from_integer(2.into()) {
                out.push(Violation::Doubling {
                    vertex: v,
                    parent: p,
                    weight: wv,
                    parent_weight: wp,
                });
            }
        }
    }
    out
}

/// Finds parents for every positively weighted vertex: the root when
/// adjacent, otherwise the heaviest neighbour with at least double weight.
pub fn infer_strategy_tree(
    g: &Graph,
    r: Vertex,
    weights: &BTreeMap<Vertex, Rational>,
    name: &str,
) -> Result<Strategy> {
    g.check(r)?;
    let mut bad = Vec::new();
    let mut parent = BTreeMap::new();
    let two = Rational::from_integer(2.into());
    for (&v, w) in weights {
        g.check(v)?;
        if w.is_negative() || (v == r && !w.is_zero()) {
            bad.push(g.label(v));
            continue;
        }
        if v == r || w.is_zero() {
            continue;
        }
        if g.adjacent(v, r) {
            parent.insert(v, r);
            continue;
        }
        let need = w * &two;
        let mut cands: Vec<(Rational, Vertex)> = g
            .neighbors(v)
            .iter()
            .filter_map(|&p| weights.get(&p).map(|wp| (wp.clone(), p)))
            .filter(|(wp, p)| *p != r && *wp >= need)
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        match cands.first() {
            Some(&(_, p)) => {
                parent.insert(v, p);
            }
            None => bad.push(g.label(v)),
        }
    }
    if !bad.is_empty() {
        return Err(Error::NoValidTree(bad));
    }
    let weights = weights.iter().filter(|(_, w)| !w.is_zero()).map(|(&v, w)| (v, w.clone())).collect();
    let s = Strategy::new(name, r, parent, weights);
    let v = validate_strategy(g, &s);
    if v.is_empty() {
        Ok(s)
    } else {
        Err(Error::NoValidTree(v.iter().map(|x| x.describe(g)).collect()))
    }
}

/// The largest valid strategy below `s`: vertices whose parent chain
/// leaves the graph's edges lose their weight, and every other weight is
/// capped at half its parent's (already repaired) weight.
pub fn repair_strategy(g: &Graph, s: &Strategy) -> Strategy {
    let r = s.root;
    let two = Rational::from_integer(2.into());
    let mut parent = BTreeMap::new();
    let mut weights: BTreeMap<Vertex, Rational> = BTreeMap::new();
    // settle vertices in order of their depth in the listed tree
    let mut depth: Vec<(usize, Vertex)> = Vec::new();
    for (&v, &p) in &s.parent {
        if v == r || v >= g.n() || p >= g.n() {
            continue;
        }
        let mut x = v;
        let mut d = 0;
        let mut ok = true;
        while x != r {
            match s.parent.get(&x) {
                Some(&y) if y < g.n() && g.adjacent(x, y) && d <= s.parent.len() => {
                    x = y;
                    d += 1;
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            depth.push((d, v));
        }
    }
    depth.sort();
    for (_, v) in depth {
        let p = s.parent[&v];
        let mut w = s.weight(v);
        if w.is_negative() {
            w = Rational::zero();
        }
        if p != r {
            let cap = weights.get(&p).cloned().unwrap_or_else(Rational::zero) / &two;
            if w > cap {
                w = cap;
            }
        }
        parent.insert(v, p);
        weights.insert(v, w);
    }
    weights.retain(|_, w| w.is_positive());
    parent.retain(|v, _| weights.contains_key(v));
    Strategy::new(s.name.clone(), r, parent, weights)
}

/// Strategies sharing one graph and root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategySet {
    pub name: String,
    pub graph_id: String,
    pub root: Vertex,
    pub strategies: Vec<Strategy>,
}

impl StrategySet {
    pub fn new(name: impl Into<String>, graph_id: impl Into<String>, root: Vertex, strategies: Vec<Strategy>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::EmptyStrategySet);
        }
        if strategies.iter().any(|s| s.root != root) {
            return Err(Error::RootMismatch);
        }
        Ok(Self {
            name: name.into(),
            graph_id: graph_id.into(),
            root,
            strategies,
        })
    }

    pub fn total_tvalue(&self) -> Rational {
        self.strategies.iter().map(Strategy::tvalue).sum()
    }

    /// `c_v = sum_i w_i(v)` for each vertex.
    pub fn coefficients(&self, n: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); n];
        for s in &self.strategies {
            for (&v, w) in &s.weights {
                if v < n {
                    c[v] += w;
                }
            }
        }
        c
    }

    pub fn violations(&self, g: &Graph) -> Vec<(String, Violation)> {
        self.strategies
            .iter()
            .flat_map(|s| validate_strategy(g, s).into_iter().map(|v| (s.name.clone(), v)))
            .collect()
    }

    /// Reads `graph <id> root <v>` from the first non-comment line.
    pub fn header(text: &str) -> Result<(String, String)> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            return match toks[..] {
                ["graph", id, "root", r] => Ok((id.to_string(), r.to_string())),
                _ => Err(parse_err(i + 1, "expected \"graph <id> root <vertex>\"")),
            };
        }
        Err(parse_err(1, "empty strategy file"))
    }

    /// Parses the strategy text format against an already resolved graph.
    pub fn parse(g: &Graph, name: &str, text: &str) -> Result<StrategySet> {
        let (graph_id, root_name) = Self::header(text)?;
        let root = g.vertex(&root_name)?;
        let mut strategies: Vec<Strategy> = Vec::new();
        let mut seen_header = false;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if !seen_header {
                seen_header = true;
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[..] {
                ["strategy", sname] => strategies.push(Strategy::new(sname, root, BTreeMap::new(), BTreeMap::new())),
                [v, p, w] => {
                    let s = strategies
                        .last_mut()
                        .ok_or_else(|| parse_err(lineno, "weight line before any \"strategy\" line"))?;
                    let v = g.vertex(v).map_err(|_| parse_err(lineno, format!("unknown vertex {v:?}")))?;
                    let w = parse_rational(w).ok_or_else(|| parse_err(lineno, format!("bad weight {w:?}")))?;
                    if s.weights.insert(v, w).is_some() {
                        return Err(parse_err(lineno, format!("vertex {} listed twice", g.label(v))));
                    }
                    // "-" records a weight with no usable parent; validation reports it
                    if p != "-" {
                        let p = g.vertex(p).map_err(|_| parse_err(lineno, format!("unknown vertex {p:?}")))?;
                        s.parent.insert(v, p);
                    }
                }
                _ => return Err(parse_err(lineno, format!("unexpected line {line:?}"))),
            }
        }
        StrategySet::new(name, graph_id, root, strategies)
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = format!("graph {} root {}\n", self.graph_id, g.label(self.root));
        for s in &self.strategies {
            let _ = writeln!(out, "strategy {}", s.name);
            // heaviest first, then by vertex id
            let mut rows: Vec<(&Vertex, &Rational)> = s.weights.iter().collect();
            rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
            for (&v, w) in rows {
                let p = s.parent(v).map_or_else(|| "-".to_string(), |p| g.label(p));
                let _ = writeln!(out, "{} {} {}", g.label(v), p, w);
            }
        }
        out
    }
}

/// Accepts `a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// `floor(x) + 1` as an integer bound.
pub fn floor_plus_one(x: &Rational) -> u64 {
    (x.floor().to_integer() + BigInt::one()).to_u64().unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregateBound {
    /// Sum of the tree values.
    pub total: Rational,
    /// Smallest total coefficient over non-root vertices.
    pub q: Rational,
    /// `total / q`.
    pub value: Rational,
    /// `floor(total / q) + 1`.
    pub bound: u64,
    /// Vertices attaining `q`.
    pub tight: Vec<Vertex>,
}

impl fmt::Display for AggregateBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} -> pi <= {}", self.total, self.q, self.bound)
    }
}

/// Sums the WFL inequalities: `q |C| <= sum_v c_v C(v) <= sum_i w(T_i)`.
pub fn aggregate_bound(g: &Graph, ss: &StrategySet) -> Result<AggregateBound> {
    let coef = ss.coefficients(g.n());
    let mut q: Option<Rational> = None;
    for v in g.vertices().filter(|&v| v != ss.root) {
        if coef[v].is_zero() {
            return Err(Error::Uncovered(g.label(v)));
        }
        if q.as_ref().is_none_or(|q| coef[v] < *q) {
            q = Some(coef[v].clone());
        }
    }
    let q = q.ok_or_else(|| Error::OutOfRange("graph has no non-root vertex".into()))?;
    let tight = g.vertices().filter(|&v| v != ss.root && coef[v] == q).collect();
    let total = ss.total_tvalue();
    let value = &total / &q;
    Ok(AggregateBound {
        bound: floor_plus_one(&value),
        total,
        q,
        value,
        tight,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpBound {
    pub optimum: Rational,
    pub bound: u64,
    /// An optimal fractional configuration, by vertex.
    pub point: Vec<Rational>,
    /// Optimal multipliers, one per strategy.
    pub multipliers: Vec<Rational>,
}

/// Maximises `|C|` over the polytope cut out by the strategies.
pub fn lp_bound(g: &Graph, ss: &StrategySet) -> Result<LpBound> {
    let coef = ss.coefficients(g.n());
    let vars: Vec<Vertex> = g.vertices().filter(|&v| v != ss.root).collect();
    if let Some(&v) = vars.iter().find(|&&v| coef[v].is_zero()) {
        return Err(Error::Uncovered(g.label(v)));
    }
    let a: Vec<Vec<Rational>> = ss
        .strategies
        .iter()
        .map(|s| vars.iter().map(|&v| s.weight(v)).collect())
        .collect();
    let b: Vec<Rational> = ss.strategies.iter().map(Strategy::tvalue).collect();
    let c = vec![Rational::one(); vars.len()];
    let sol = lp::maximize(&c, &a, &b).map_err(|e| match e {
        lp::LpError::Unbounded(j) if j < vars.len() => Error::Uncovered(g.label(vars[j])),
        other => Error::OutOfRange(other.to_string()),
    })?;
    let mut point = vec![Rational::zero(); g.n()];
    for (i, &v) in vars.iter().enumerate() {
        point[v] = sol.x[i].clone();
    }
    Ok(LpBound {
        bound: floor_plus_one(&sol.value),
        optimum: sol.value,
        point,
        multipliers: sol.dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn star_is_valid() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let w: BTreeMap<_, _> = (1..4).map(|v| (v, q(1))).collect();
        let s = infer_strategy_tree(&g, 0, &w, "star").unwrap();
        assert!(validate_strategy(&g, &s).is_empty());
    }

    #[test]
    fn doubling_violation() {
        let g = path3();
        let s = Strategy::new(
            "p",
            0,
            [(1, 0), (2, 1)].into_iter().collect(),
            [(1, q(1)), (2, q(1))].into_iter().collect(),
        );
        let v = validate_strategy(&g, &s);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::Doubling { vertex: 2, .. }));
        let w: BTreeMap<_, _> = [(1, q(1)), (2, q(1))].into_iter().collect();
        assert!(matches!(infer_strategy_tree(&g, 0, &w, "p"), Err(Error::NoValidTree(_))));
    }

    #[test]
    fn single_edge_lp() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let w: BTreeMap<_, _> = [(1, q(1))].into_iter().collect();
        let s = infer_strategy_tree(&g, 0, &w, "e").unwrap();
        let ss = StrategySet::new("e", "path:2", 0, vec![s]).unwrap();
        let lp = lp_bound(&g, &ss).unwrap();
        assert_eq!(lp.optimum, q(1));
        assert_eq!(lp.bound, 2);
        assert_eq!(aggregate_bound(&g, &ss).unwrap().bound, 2);
    }

    #[test]
    fn uncovered_vertex_is_an_error() {
        let g = path3();
        let w: BTreeMap<_, _> = [(1, q(1))].into_iter().collect();
        let s = infer_strategy_tree(&g, 0, &w, "e").unwrap();
        let ss = StrategySet::new("e", "path:3", 0, vec![s]).unwrap();
        assert_eq!(aggregate_bound(&g, &ss).unwrap_err(), Error::Uncovered("2".into()));
        assert_eq!(lp_bound(&g, &ss).unwrap_err(), Error::Uncovered("2".into()));
    }

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
