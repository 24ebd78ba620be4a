//! Certified lower and upper bounds on pebbling numbers, and the reports
//! that assemble them.

mod report;
mod table;

pub use report::{report, BoundEntry, BoundKind, BoundReport, Certificate, OrbitBounds, Provenance, ReportOptions};
pub use table::{check_table1, compare, RowCheck, RowStatus, FORMULA_K};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::corpus::{Corpus, NamedRetract};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pebbling::{snl_config, weight_with_distances, Configuration};
use crate::retract::RetractMap;
use crate::solver::{pi, Budget, PiOptions};
use crate::Rational;

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn pow2(e: u32) -> u64 {
    1u64.checked_shl(e).unwrap_or(u64::MAX)
}

/// `max(n, 2^D)` and `(n - D)(2^D - 1) + 1`, saturating.
pub fn basic_bounds(g: &Graph) -> (u64, u64) {
    let n = g.n() as u64;
    let d = g.diameter();
    let lower = n.max(pow2(d));
    let upper = (n - u64::from(d).min(n))
        .saturating_mul(pow2(d).saturating_sub(1))
        .saturating_add(1);
    (lower, upper)
}

/// `pi(C_n)`: `2^d` for `n = 2d`, `ceil((2^(d+2) - 1) / 3)` for `n = 2d + 1`.
pub fn cycle_pi(n: usize) -> Result<u64> {
    if !(3..=120).contains(&n) {
        return Err(Error::OutOfRange(format!("cycle length {n}")));
    }
    let d = (n / 2) as u32;
    Ok(if n.is_multiple_of(2) {
        pow2(d)
    } else {
        (pow2(d + 2) - 1).div_ceil(3)
    })
}

/// A largest 0-unsolvable configuration on `C_n` (vertices `0..n` in
/// cyclic order): `2^d - 1` on the antipode of an even cycle, and
/// `(pi - 1) / 2` on each of the two far vertices of an odd one.
pub fn cycle_extremal_config(n: usize) -> Result<Configuration> {
    let p = cycle_pi(n)?;
    let d = n / 2;
    let mut c = vec![0u32; n];
    if n.is_multiple_of(2) {
        c[d] = (p - 1) as u32;
    } else {
        c[d] = ((p - 1) / 2) as u32;
        c[d + 1] = ((p - 1) / 2) as u32;
    }
    Ok(Configuration::from_counts(c))
}

/// Winner of the small-neighbourhood scan.
#[derive(Clone, Debug, Serialize)]
pub struct SnlBest {
    /// `|C*| + 1`.
    pub bound: u64,
    pub size: u64,
    pub u: Vertex,
    pub v: Vertex,
    pub a: u32,
    pub b: u32,
    #[serde(skip)]
    pub config: Configuration,
}

fn ball_sizes(g: &Graph) -> Vec<Vec<usize>> {
    let d = g.diameter() as usize;
    g.vertices()
        .map(|x| {
            let mut count = vec![0usize; d + 1];
            for &t in g.dist_row(x) {
                count[t as usize] += 1;
            }
            for r in 1..=d {
                count[r] += count[r - 1];
            }
            count
        })
        .collect()
}

/// Scans all `(u, v, a, b)` with disjoint balls `N_a[u]`, `N_b[v]` (that is
/// `a + b < d(u, v)`) and keeps the largest `C*`. Ties go to the first
/// quadruple in lexicographic order. With `from` set only that `u` is tried.
pub fn snl_best(g: &Graph, from: Option<Vertex>) -> Result<SnlBest> {
    if let Some(u) = from {
        g.check(u)?;
    }
    let n = g.n();
    if n == 1 {
        return Ok(SnlBest {
            bound: 1,
            size: 0,
            u: 0,
            v: 0,
            a: 0,
            b: 0,
            config: Configuration::empty(1),
        });
    }
    let balls = ball_sizes(g);
    let diam = g.diameter();
    let mut best: Option<(u64, Vertex, Vertex, u32, u32)> = None;
    let us: Vec<Vertex> = match from {
        Some(u) => vec![u],
        None => g.vertices().collect(),
    };
    for &u in &us {
        for v in g.vertices() {
            let d = g.dist(u, v);
            if v == u {
                continue;
            }
            // a + b < d(u, v) and a + b + 1 <= diameter
            let cap = (d - 1).min(diam - 1);
            for a in 0..=cap {
                for b in 0..=cap - a {
                    let size = pow2(a + b + 1) - 1 + (n - balls[u][a as usize] - balls[v][b as usize]) as u64;
                    if best.is_none_or(|x| size > x.0) {
                        best = Some((size, u, v, a, b));
                    }
                }
            }
        }
    }
    let (size, u, v, a, b) = best.expect("n >= 2 gives a pair");
    let config = snl_config(g, u, v, a, b)?;
    debug_assert_eq!(config.size(), size);
    Ok(SnlBest {
        bound: size + 1,
        size,
        u,
        v,
        a,
        b,
        config,
    })
}

/// Why a graph is not Class 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Class0Certificate {
    /// Diameter at least 3 and `3e < 5n - 11`.
    EdgeCount { n: usize, edges: usize, diameter: u32 },
    /// `|N_a[u] ∪ N_b[v]| < 2^(a+b+1)` with disjoint balls.
    Snl { u: String, v: String, a: u32, b: u32, union: usize, power: u64 },
    /// An unsolvable configuration with at least `n` pebbles.
    Configuration { target: String, size: u64, pebbles: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Class0Verdict {
    #[serde(rename = "not-class-0")]
    NotClass0 { certificate: Class0Certificate },
    #[serde(rename = "class-0-verified")]
    Class0Verified { pi: u64 },
    Inconclusive { reason: String },
}

/// Tries the edge-count test, then the SNL ball test, then (within
/// `budget`) an exhaustive computation of `pi(G)` over orbit representatives.
pub fn class0_test(g: &Graph, budget: Budget) -> Result<Class0Verdict> {
    let n = g.n();
    let e = g.edge_count();
    let d = g.diameter();
    if d >= 3 && 3 * e + 11 < 5 * n {
        return Ok(Class0Verdict::NotClass0 {
            certificate: Class0Certificate::EdgeCount { n, edges: e, diameter: d },
        });
    }
    // widest margin 2^(a+b+1) - |N_a[u] ∪ N_b[v]|, first found on ties
    let balls = ball_sizes(g);
    let mut best: Option<(u64, Vertex, Vertex, u32, u32)> = None;
    for s in 0..d {
        let power = pow2(s + 1);
        for a in (0..=s).rev() {
            let b = s - a;
            for u in g.vertices() {
                for v in g.vertices() {
                    let union = (balls[u][a as usize] + balls[v][b as usize]) as u64;
                    if g.dist(u, v) > s && union < power && best.is_none_or(|x| power - union > x.0) {
                        best = Some((power - union, u, v, a, b));
                    }
                }
            }
        }
    }
    if let Some((margin, u, v, a, b)) = best {
        let power = pow2(a + b + 1);
        return Ok(Class0Verdict::NotClass0 {
            certificate: Class0Certificate::Snl {
                u: g.label(u),
                v: g.label(v),
                a,
                b,
                union: (power - margin) as usize,
                power,
            },
        });
    }
    let opts = PiOptions {
        budget,
        ..PiOptions::default()
    };
    let reps = g.orbit_representatives();
    let res = pi(g, Some(&reps), &opts)?;
    if res.value > n as u64 {
        return Ok(Class0Verdict::NotClass0 {
            certificate: Class0Certificate::Configuration {
                target: g.label(res.target),
                size: res.extremal_config.size(),
                pebbles: res.extremal_config.describe(g),
            },
        });
    }
    Ok(if res.exhaustive {
        Class0Verdict::Class0Verified { pi: res.value }
    } else {
        Class0Verdict::Inconclusive {
            reason: format!("search stopped after {} nodes", res.nodes_explored),
        }
    })
}

/// Lower bound for cubic graphs of girth at least 5 and diameter at least 4.
#[derive(Clone, Debug, Serialize)]
pub struct Girth5Bound {
    pub bound: u64,
    pub size: u64,
    pub u: Vertex,
    pub v: Vertex,
    #[serde(skip)]
    pub config: Configuration,
}

/// `C*` with `a = 2`, `b = 1` on the first pair at distance 4 or more:
/// `15 + (n - 14)` pebbles.
pub fn girth5_cubic_bound(g: &Graph) -> Result<Girth5Bound> {
    if !g.is_cubic() {
        return Err(Error::Hypothesis("graph is not cubic".into()));
    }
    if g.diameter() < 4 {
        return Err(Error::Hypothesis(format!("diameter {} < 4", g.diameter())));
    }
    let girth = g.girth().unwrap_or(u32::MAX);
    if girth < 5 {
        return Err(Error::Hypothesis(format!("girth {girth} < 5")));
    }
    let (u, v) = g
        .vertices()
        .flat_map(|u| g.vertices().map(move |v| (u, v)))
        .find(|&(u, v)| g.dist(u, v) >= 4)
        .expect("diameter >= 4");
    let config = snl_config(g, u, v, 2, 1)?;
    let size = config.size();
    debug_assert_eq!(size, 15 + g.n() as u64 - 14);
    Ok(Girth5Bound {
        bound: size + 1,
        size,
        u,
        v,
        config,
    })
}

/// `pi(G) >= pi(H)` for a verified retract `G -> H`.
pub fn retract_lower_bound(m: &RetractMap, pi_h: u64) -> Result<u64> {
    let c = m.check();
    if c.is_retract() {
        Ok(pi_h)
    } else {
        Err(Error::RetractFailed(format!(
            "{}: {} broken edges, {} unfixed vertices, {} missing embedded edges",
            m.name,
            c.broken.len(),
            c.unfixed.len(),
            c.missing_edges.len()
        )))
    }
}

/// The cycle's extremal configuration placed on the embedded copy inside
/// the full graph, with the image of cycle vertex 0 as target.
pub fn lift_cycle_extremal(r: &NamedRetract, g: &Graph) -> Result<(Vertex, Configuration)> {
    let n = r.map.target.n();
    let h = cycle_extremal_config(n)?;
    let emb = r
        .map
        .embedding()
        .ok_or_else(|| Error::RetractFailed(format!("{} has no embedding", r.id)))?;
    let mut c = Configuration::empty(g.n());
    for (x, &y) in emb.iter().enumerate() {
        c.set(r.lift_vertex(y), h.get(x));
    }
    Ok((r.lift_vertex(emb[0]), c))
}

/// `r`-weight of `c` when `r` keeps only its edge to `x`.
pub fn weight_through(g: &Graph, c: &Configuration, r: Vertex, x: Vertex) -> Result<Rational> {
    g.check(r)?;
    c.check_host(g)?;
    if !g.adjacent(r, x) {
        return Err(Error::NotAdjacent(r, x));
    }
    let mut d: Vec<u32> = g
        .distances_avoiding(x, &[r])
        .into_iter()
        .map(|t| t.saturating_add(1))
        .collect();
    d[r] = 0;
    Ok(weight_with_distances(c.counts(), &d))
}

/// Unsolvability proof by last edge: a shortest solution touches `r` only
/// in its final move, so it lives in `G` with a single edge left at `r`.
/// Returns the weight for each edge when all are below 1.
pub fn split_weight_certificate(g: &Graph, c: &Configuration, r: Vertex) -> Result<Option<Vec<(Vertex, Rational)>>> {
    if c.get(r) > 0 {
        return Ok(None);
    }
    let mut out = Vec::new();
    for &x in g.neighbors(r) {
        let w = weight_through(g, c, r, x)?;
        if w >= Rational::one() {
            return Ok(None);
        }
        out.push((x, w));
    }
    Ok(Some(out))
}

/// One `a1`-edge and the weight of the background configuration when it
/// is the only edge left at `a1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeWeight {
    pub edge: String,
    #[serde(serialize_with = "ser_rational")]
    pub weight: Rational,
}

/// Arithmetic behind the Watkins lower bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WatkinsChecks {
    pub edge_weights: Vec<EdgeWeight>,
    pub all_below_one: bool,
    /// `1/2^3 - 2/2^5 = 1/2^4`.
    pub slide_identity: bool,
    /// `2^7/2^7 - 1/2^3 > 1/2^4`.
    pub slide_loss: bool,
    /// Vertices on shortest `a1`–`a13` paths.
    pub blue: Vec<String>,
    /// Vertices on shortest `a1`–`a14` paths.
    pub green: Vec<String>,
    pub c15_retract: bool,
    pub c15_pi: u64,
    pub background_size: u64,
}

impl WatkinsChecks {
    pub fn ok(&self) -> bool {
        self.all_below_one && self.slide_identity && self.slide_loss && self.c15_retract && self.c15_pi == 171
    }
}

fn frac(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

pub fn watkins_weight_checks(corpus: &Corpus) -> Result<WatkinsChecks> {
    let bg = corpus.named_config("watkins-fig4-bg")?;
    let g = &bg.graph;
    let a1 = g.vertex("a1")?;
    let mut edge_weights = Vec::new();
    for name in ["a2", "b1", "a25"] {
        let x = g.vertex(name)?;
        edge_weights.push(EdgeWeight {
            edge: format!("{name}a1"),
            weight: weight_through(g, &bg.config, a1, x)?,
        });
    }
    let all_below_one = edge_weights.iter().all(|e| e.weight < Rational::one());
    let slide_identity = frac(1, 8) - frac(2, 32) == frac(1, 16);
    let slide_loss = frac(128, 128) - frac(1, 8) > frac(1, 16);
    let names = |vs: Vec<Vertex>| vs.into_iter().map(|v| g.label(v)).collect::<Vec<_>>();
    let blue = names(g.geodesic_union(a1, g.vertex("a13")?)?);
    let green = names(g.geodesic_union(a1, g.vertex("a14")?)?);
    let r = corpus.retract("watkins-bg-c15")?;
    let c15_retract = r.map.check().is_retract();
    Ok(WatkinsChecks {
        edge_weights,
        all_below_one,
        slide_identity,
        slide_loss,
        blue,
        green,
        c15_retract,
        c15_pi: cycle_pi(r.map.target.n())?,
        background_size: bg.config.size(),
    })
}
