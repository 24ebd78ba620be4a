//! Bound reports: every producer that applies to a corpus graph, reduced
//! to the tightest certified pair per vertex orbit and overall.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{
    basic_bounds, cycle_pi, girth5_cubic_bound, lift_cycle_extremal, retract_lower_bound, snl_best,
    split_weight_certificate, watkins_weight_checks,
};
use crate::corpus::{generate_jm_strategies, ConfigSource, Corpus, Flower, JmRoot, StrategyInfo};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pebbling::Configuration;
use crate::solver::{is_solvable, pi_target, relaxation_bound_with, Budget, PiOptions, Verdict};
use crate::wfl::{aggregate_bound, lp_bound, repair_strategy, Strategy, StrategySet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// Which argument produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    BasicN,
    Basic2D,
    BasicUpper,
    Snl,
    SnlAugmentedConfig,
    SearchConfig,
    Retract,
    WflAggregate,
    WflLp,
    WflRelaxation,
    Exhaustive,
    PaperFormula,
    /// A published hand proof whose computable ingredients were rechecked.
    PaperFormulaChecked,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::BasicN => "basic-n",
            Provenance::Basic2D => "basic-2D",
            Provenance::BasicUpper => "basic-upper",
            Provenance::Snl => "snl",
            Provenance::SnlAugmentedConfig => "snl-augmented-config",
            Provenance::SearchConfig => "search-config",
            Provenance::Retract => "retract",
            Provenance::WflAggregate => "wfl-aggregate",
            Provenance::WflLp => "wfl-lp",
            Provenance::WflRelaxation => "wfl-relaxation",
            Provenance::Exhaustive => "exhaustive",
            Provenance::PaperFormula => "paper-formula",
            Provenance::PaperFormulaChecked => "paper-formula + component checks",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Provenance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// What a bound rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Certificate {
    /// An unsolvable configuration; `check` says how it was confirmed.
    Configuration {
        id: Option<String>,
        target: String,
        size: u64,
        pebbles: String,
        check: String,
    },
    Snl {
        u: String,
        v: String,
        a: u32,
        b: u32,
        size: u64,
    },
    Strategies {
        id: String,
        root: String,
        repaired: bool,
    },
    Retract {
        id: String,
        target_graph: String,
    },
    Search {
        target: String,
        nodes: u64,
        pebbles: String,
    },
    Formula {
        text: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    /// `None` for bounds on `pi(G)` itself.
    pub target: Option<String>,
    pub kind: BoundKind,
    pub value: u64,
    pub provenance: Provenance,
    pub certificate: Option<Certificate>,
    pub note: String,
}

impl BoundEntry {
    /// Short description for error messages and tables.
    pub fn origin(&self) -> String {
        let at = self.target.as_deref().map(|t| format!(" at {t}")).unwrap_or_default();
        let id = match &self.certificate {
            Some(Certificate::Configuration { id: Some(id), .. })
            | Some(Certificate::Strategies { id, .. })
            | Some(Certificate::Retract { id, .. }) => format!(" {id}"),
            _ => String::new(),
        };
        format!("{}{id}{at}", self.provenance)
    }
}

/// Best bounds for one vertex orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitBounds {
    pub representative: String,
    pub size: usize,
    pub lower: Option<u64>,
    pub lower_from: Option<String>,
    pub upper: u64,
    pub upper_from: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub diameter: u32,
    pub lower: u64,
    pub lower_from: String,
    pub upper: u64,
    pub upper_from: String,
    pub orbits: Vec<OrbitBounds>,
    pub entries: Vec<BoundEntry>,
    /// Producers that ran without yielding a bound, and why.
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn best(&self, kind: BoundKind) -> Option<&BoundEntry> {
        let value = match kind {
            BoundKind::Lower => self.lower,
            BoundKind::Upper => self.upper,
        };
        self.entries.iter().find(|e| e.kind == kind && e.value == value)
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Per check of a shipped configuration.
    pub solver_budget: Budget,
    /// Per orbit representative for the pebbling-number search; `None`
    /// skips the search.
    pub search_budget: Option<Budget>,
    /// The search is skipped on graphs with more vertices.
    pub search_max_n: usize,
    /// Also run the solver on configurations whose unsolvability rests on
    /// a hand proof (large; usually ends "unknown").
    pub attempt_proof_configs: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            solver_budget: Budget::seconds(60.0),
            search_budget: Some(Budget::nodes(4_000_000)),
            search_max_n: 30,
            attempt_proof_configs: false,
        }
    }
}

struct Builder<'a> {
    g: &'a Graph,
    entries: Vec<BoundEntry>,
    notes: Vec<String>,
}

impl Builder<'_> {
    fn push(
        &mut self,
        target: Option<Vertex>,
        kind: BoundKind,
        value: u64,
        provenance: Provenance,
        certificate: Option<Certificate>,
        note: impl Into<String>,
    ) {
        self.entries.push(BoundEntry {
            target: target.map(|v| self.g.label(v)),
            kind,
            value,
            provenance,
            certificate,
            note: note.into(),
        });
    }

    fn config_cert(&self, id: Option<&str>, r: Vertex, c: &Configuration, check: String) -> Certificate {
        Certificate::Configuration {
            id: id.map(str::to_string),
            target: self.g.label(r),
            size: c.size(),
            pebbles: c.describe(self.g),
            check,
        }
    }

    /// Solver first, then the last-edge weight test.
    fn confirm_unsolvable(&self, c: &Configuration, r: Vertex, budget: Budget) -> Result<(Option<bool>, String)> {
        let res = is_solvable(self.g, c, r, Some(budget))?;
        match res.verdict {
            Verdict::Unsolvable => Ok((Some(true), format!("solver: unsolvable ({} nodes)", res.nodes_explored))),
            Verdict::Solvable => {
                let moves = res.witness.map_or(0, |w| w.len());
                Ok((Some(false), format!("solver: solvable in {moves} moves")))
            }
            Verdict::Unknown => match split_weight_certificate(self.g, c, r)? {
                Some(ws) => {
                    let parts: Vec<String> = ws.iter().map(|(x, w)| format!("{}:{w}", self.g.label(*x))).collect();
                    Ok((Some(true), format!("last-edge weights below 1 ({})", parts.join(", "))))
                }
                None => Ok((None, format!("solver: unknown after {} nodes", res.nodes_explored))),
            },
        }
    }
}

fn orbit_index(g: &Graph, reps: &[Vertex]) -> Vec<usize> {
    let mut of = vec![usize::MAX; g.n()];
    for orbit in g.orbits() {
        let i = reps.iter().position(|r| orbit.contains(r)).expect("one representative per orbit");
        for v in orbit {
            of[v] = i;
        }
    }
    of
}

/// Runs every applicable producer on corpus graph `id` and reduces the
/// results. Fails with [`Error::Inconsistent`] if some lower bound exceeds
/// some upper bound that applies to the same target.
pub fn report(corpus: &Corpus, id: &str, opts: &ReportOptions) -> Result<BoundReport> {
    let g = corpus.graph(id)?;
    let mut b = Builder {
        g: &g,
        entries: Vec::new(),
        notes: Vec::new(),
    };
    let n = g.n() as u64;
    let reps = corpus.orbit_representatives(id, &g);

    let (_, upper) = basic_bounds(&g);
    b.push(None, BoundKind::Lower, n, Provenance::BasicN, None, "one pebble on every other vertex");
    let two_d = 1u64.checked_shl(g.diameter()).unwrap_or(u64::MAX);
    b.push(None, BoundKind::Lower, two_d, Provenance::Basic2D, None, "2^D - 1 pebbles at distance D");
    b.push(None, BoundKind::Upper, upper, Provenance::BasicUpper, None, "(n - D)(2^D - 1) + 1");

    lower_producers(corpus, id, &mut b, opts)?;
    let extra = upper_producers(corpus, id, &mut b)?;
    for &r in &reps {
        let mine: Vec<Strategy> = extra.iter().filter(|s| s.root() == r).cloned().collect();
        let rb = relaxation_bound_with(&g, r, &mine)?;
        b.push(
            Some(r),
            BoundKind::Upper,
            rb.bound,
            Provenance::WflRelaxation,
            None,
            format!("LP over {} strategies and C(v) <= 2^d(v) - 1: optimum {}", rb.strategies, rb.optimum),
        );
    }
    if let Some(budget) = opts.search_budget.filter(|_| g.n() <= opts.search_max_n) {
        let po = PiOptions {
            budget,
            ..PiOptions::default()
        };
        for &r in &reps {
            let res = pi_target(&g, r, &po)?;
            let cert = Certificate::Search {
                target: g.label(r),
                nodes: res.nodes_explored,
                pebbles: res.extremal_config.describe(&g),
            };
            if res.exhaustive {
                b.push(Some(r), BoundKind::Lower, res.value, Provenance::Exhaustive, Some(cert.clone()), "search completed");
                b.push(Some(r), BoundKind::Upper, res.value, Provenance::Exhaustive, Some(cert), "search completed");
            } else {
                b.push(
                    Some(r),
                    BoundKind::Lower,
                    res.value,
                    Provenance::SearchConfig,
                    Some(cert),
                    "largest unsolvable configuration found before the budget ran out",
                );
            }
        }
    }
    assemble(id, &g, &reps, b)
}

fn lower_producers(corpus: &Corpus, id: &str, b: &mut Builder, opts: &ReportOptions) -> Result<()> {
    let g = b.g;
    let s = snl_best(g, None)?;
    b.push(
        Some(s.u),
        BoundKind::Lower,
        s.bound,
        Provenance::Snl,
        Some(Certificate::Snl {
            u: g.label(s.u),
            v: g.label(s.v),
            a: s.a,
            b: s.b,
            size: s.size,
        }),
        "largest C* over all disjoint ball pairs",
    );
    match girth5_cubic_bound(g) {
        Ok(h) => b.push(
            Some(h.u),
            BoundKind::Lower,
            h.bound,
            Provenance::Snl,
            Some(Certificate::Snl {
                u: g.label(h.u),
                v: g.label(h.v),
                a: 2,
                b: 1,
                size: h.size,
            }),
            "cubic, girth >= 5: 15 + (n - 14) pebbles",
        ),
        Err(Error::Hypothesis(why)) => b.notes.push(format!("girth-5 cubic bound not applicable: {why}")),
        Err(e) => return Err(e),
    }

    for info in corpus.config_infos()?.into_iter().filter(|c| c.graph == id) {
        let nc = corpus.named_config(&info.id)?;
        let (r, c) = (nc.target, &nc.config);
        match info.source {
            ConfigSource::Lifted => continue,
            ConfigSource::Proof => {
                let mut check = "solver attempt skipped".to_string();
                if opts.attempt_proof_configs {
                    let (ok, how) = b.confirm_unsolvable(c, r, opts.solver_budget)?;
                    match ok {
                        Some(true) => {
                            let cert = b.config_cert(Some(&info.id), r, c, how);
                            b.push(Some(r), BoundKind::Lower, c.size() + 1, Provenance::Exhaustive, Some(cert), "");
                            continue;
                        }
                        Some(false) => {
                            b.notes.push(format!("{}: {how}; no bound", info.id));
                            continue;
                        }
                        None => check = how,
                    }
                }
                if id == "watkins" {
                    let w = watkins_weight_checks(corpus)?;
                    if w.ok() {
                        let cert = b.config_cert(Some(&info.id), r, c, check);
                        let weights: Vec<String> = w.edge_weights.iter().map(|e| format!("{} {}", e.edge, e.weight)).collect();
                        b.push(
                            Some(r),
                            BoundKind::Lower,
                            c.size() + 1,
                            Provenance::PaperFormulaChecked,
                            Some(cert),
                            format!(
                                "checked: C15 retract, pi(C15) = {}, single-edge a1-weights {}, slide arithmetic",
                                w.c15_pi,
                                weights.join(", ")
                            ),
                        );
                    } else {
                        b.notes.push(format!("{}: component checks failed: {w:?}", info.id));
                    }
                } else {
                    b.notes.push(format!("{}: {check}; no component checks for this graph", info.id));
                }
            }
            ConfigSource::Figure | ConfigSource::Search => {
                let (ok, how) = b.confirm_unsolvable(c, r, opts.solver_budget)?;
                if ok == Some(true) {
                    let prov = if info.source == ConfigSource::Figure {
                        Provenance::SnlAugmentedConfig
                    } else {
                        Provenance::SearchConfig
                    };
                    let cert = b.config_cert(Some(&info.id), r, c, how);
                    b.push(Some(r), BoundKind::Lower, c.size() + 1, prov, Some(cert), "");
                } else {
                    b.notes.push(format!("{} ({} pebbles, target {}): {how}; no bound", info.id, c.size(), g.label(r)));
                }
            }
        }
    }

    for rid in corpus.retract_ids() {
        let nr = corpus.retract(&rid)?;
        if nr.graph_id != id {
            continue;
        }
        let Some(len) = nr.target_id.strip_prefix("cycle:").and_then(|s| s.parse::<usize>().ok()) else {
            b.notes.push(format!("{rid}: no pebbling number known for {}", nr.target_id));
            continue;
        };
        let pi_h = retract_lower_bound(&nr.map, cycle_pi(len)?)?;
        let (r, c) = lift_cycle_extremal(&nr, g)?;
        let cert = Certificate::Retract {
            id: rid.clone(),
            target_graph: nr.target_id.clone(),
        };
        if nr.induced.is_none() {
            b.push(Some(r), BoundKind::Lower, pi_h, Provenance::Retract, Some(cert), format!("pi({}) = {pi_h}", nr.target_id));
            continue;
        }
        // the retract lives on a portion; the lifted configuration must be
        // unsolvable in the whole graph too
        let (ok, how) = b.confirm_unsolvable(&c, r, opts.solver_budget)?;
        if ok == Some(true) {
            b.push(
                Some(r),
                BoundKind::Lower,
                c.size() + 1,
                Provenance::Retract,
                Some(cert),
                format!("pi({}) = {pi_h} on a portion; lifted {} {how}", nr.target_id, c.describe(g)),
            );
        } else {
            b.notes.push(format!("{rid}: lifted configuration {}: {how}; no bound", c.describe(g)));
        }
    }
    Ok(())
}

/// Strategy-based upper bounds. Returns every valid strategy used, for the
/// relaxation LP.
fn upper_producers(corpus: &Corpus, id: &str, b: &mut Builder) -> Result<Vec<Strategy>> {
    let g = b.g;
    let mut used = Vec::new();
    let mut sets: Vec<(String, StrategySet, bool, String)> = Vec::new();
    for ns in corpus.strategy_sets_for(id)? {
        let bad = ns.set.violations(g);
        if bad.is_empty() {
            sets.push((ns.info.id.clone(), ns.set, false, stated_of(&ns.info)));
        } else {
            let mut set = ns.set.clone();
            set.strategies = set.strategies.iter().map(|s| repair_strategy(g, s)).collect();
            let what: Vec<String> = bad.iter().map(|(s, v)| format!("{s}: {}", v.describe(g))).collect();
            b.notes.push(format!("{}: invalid as listed ({}); weights repaired", ns.info.id, what.join("; ")));
            sets.push((ns.info.id.clone(), set, true, stated_of(&ns.info)));
        }
    }
    if let Some(m) = id.strip_prefix("flower:").and_then(|s| s.parse::<usize>().ok()) {
        let f = Flower::new(m)?;
        for root in [JmRoot::Z0, JmRoot::V0, JmRoot::X0] {
            if f.k() >= root.min_k() {
                let (_, set) = generate_jm_strategies(m, root)?;
                sets.push((set.name.clone(), set, false, String::new()));
            }
        }
    }
    for (sid, set, repaired, stated) in sets {
        let r = set.root;
        let cert = Certificate::Strategies {
            id: sid.clone(),
            root: g.label(r),
            repaired,
        };
        let printed = if stated.is_empty() { String::new() } else { format!(", listed {stated}") };
        match aggregate_bound(g, &set) {
            Ok(agg) => b.push(
                Some(r),
                BoundKind::Upper,
                agg.bound,
                Provenance::WflAggregate,
                Some(cert.clone()),
                format!("{} / {} = {}{printed}", agg.total, agg.q, agg.value),
            ),
            Err(Error::Uncovered(v)) => b.notes.push(format!("{sid}: vertex {v} uncovered; no aggregate bound")),
            Err(e) => return Err(e),
        }
        match lp_bound(g, &set) {
            Ok(lp) => b.push(Some(r), BoundKind::Upper, lp.bound, Provenance::WflLp, Some(cert), format!("LP optimum {}", lp.optimum)),
            Err(Error::Uncovered(_)) => {}
            Err(e) => return Err(e),
        }
        used.extend(set.strategies);
    }
    Ok(used)
}

fn assemble(id: &str, g: &Graph, reps: &[Vertex], b: Builder) -> Result<BoundReport> {
    let Builder { entries, notes, .. } = b;
    let of = orbit_index(g, reps);
    let target_orbit = |e: &BoundEntry| e.target.as_ref().and_then(|t| g.vertex(t).ok()).map(|v| of[v]);

    let global_upper = entries
        .iter()
        .filter(|e| e.kind == BoundKind::Upper && e.target.is_none())
        .min_by_key(|e| e.value)
        .expect("basic upper bound always present");
    let mut orbits = Vec::new();
    for (i, &r) in reps.iter().enumerate() {
        let here: Vec<&BoundEntry> = entries.iter().filter(|e| target_orbit(e) == Some(i)).collect();
        let lower = here.iter().filter(|e| e.kind == BoundKind::Lower).max_by_key(|e| e.value);
        let upper = here
            .iter()
            .filter(|e| e.kind == BoundKind::Upper)
            .min_by_key(|e| e.value)
            .copied()
            .filter(|e| e.value < global_upper.value)
            .unwrap_or(global_upper);
        if let Some(l) = lower {
            if l.value > upper.value {
                return Err(inconsistent(l, upper));
            }
        }
        orbits.push(OrbitBounds {
            representative: g.label(r),
            size: of.iter().filter(|&&o| o == i).count(),
            lower: lower.map(|e| e.value),
            lower_from: lower.map(|e| e.origin()),
            upper: upper.value,
            upper_from: upper.origin(),
        });
    }

    let lower = entries
        .iter()
        .filter(|e| e.kind == BoundKind::Lower)
        .max_by_key(|e| e.value)
        .expect("basic lower bound always present");
    // pi(G) is the largest pi(G, r); every orbit has an upper bound
    let worst = orbits.iter().max_by_key(|o| o.upper).expect("graph has a vertex");
    let (upper, upper_from) = if worst.upper < global_upper.value {
        (worst.upper, format!("{} (worst orbit {})", worst.upper_from, worst.representative))
    } else {
        (global_upper.value, global_upper.origin())
    };
    if lower.value > upper {
        return Err(Error::Inconsistent {
            lower: lower.value,
            lower_from: lower.origin(),
            upper,
            upper_from,
        });
    }
    Ok(BoundReport {
        graph: id.to_string(),
        n: g.n(),
        edges: g.edge_count(),
        diameter: g.diameter(),
        lower: lower.value,
        lower_from: lower.origin(),
        upper,
        upper_from,
        orbits,
        entries,
        notes,
    })
}

fn inconsistent(l: &BoundEntry, u: &BoundEntry) -> Error {
    Error::Inconsistent {
        lower: l.value,
        lower_from: l.origin(),
        upper: u.value,
        upper_from: u.origin(),
    }
}

fn stated_of(info: &StrategyInfo) -> String {
    info.stated.map(|_| info.stated_text()).unwrap_or_default()
}
