//! Built-in graphs, configurations, strategy sets, retract maps and the
//! table of expected bounds, all shipped as text files.
//!
//! [`Corpus::embedded`] compiles the files into the binary;
//! [`Corpus::from_dir`] reads the same layout from disk so that data can be
//! patched without a rebuild.

pub mod families;
mod generators;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

pub use families::{cycle, flower, path, Flower};
pub use generators::{flower_lower, flower_upper, generate_jm_strategies, v0_x0_limit, z0_total, JmRoot};

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::pebbling::Configuration;
use crate::retract::RetractMap;
use crate::wfl::{validate_strategy, StrategySet};

macro_rules! embed {
    ($($path:literal),* $(,)?) => {
        &[$(($path, include_str!(concat!("../../corpus/", $path)))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embed![
    "graphs/index.tsv",
    "graphs/petersen.txt",
    "graphs/blanusa1.txt",
    "graphs/blanusa2.txt",
    "graphs/watkins.txt",
    "configs/index.tsv",
    "configs/j5-fig1.cfg",
    "configs/blanusa2-size22.cfg",
    "configs/blanusa2-search22.cfg",
    "configs/blanusa1-search22.cfg",
    "configs/watkins-fig4.cfg",
    "configs/watkins-fig4-bg.cfg",
    "strategies/index.tsv",
    "strategies/j3-z0.strat",
    "strategies/j3-v0.strat",
    "strategies/j3-x0.strat",
    "strategies/j5-z0.strat",
    "strategies/j5-v0.strat",
    "strategies/j5-x0.strat",
    "strategies/j7-v0.strat",
    "strategies/j7-x0.strat",
    "strategies/j9-x0.strat",
    "strategies/blanusa2-x3.strat",
    "strategies/blanusa2-x1.strat",
    "strategies/blanusa2-x2.strat",
    "strategies/blanusa2-z1.strat",
    "strategies/blanusa2-z2.strat",
    "strategies/blanusa2-z3.strat",
    "retracts/petersen-c5.map",
    "retracts/blanusa2-c9.map",
    "retracts/watkins-bg-c15.map",
    "table1.tsv",
];

const SUBDIRS: [&str; 4] = ["graphs", "configs", "strategies", "retracts"];

/// What kind of object a corpus entry holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Graph,
    Configuration,
    StrategySet,
    Retract,
    TableRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub id: String,
    pub kind: EntryKind,
    pub description: String,
}

/// Claims recorded for a shipped graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInfo {
    pub id: String,
    pub file: String,
    pub n: usize,
    pub cubic: bool,
    pub diameter: u32,
    pub girth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigInfo {
    pub id: String,
    pub graph: String,
    pub target: String,
    pub size: u64,
    pub file: String,
    pub source: ConfigSource,
}

/// Where a shipped configuration comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigSource {
    /// Drawn in a figure; its unsolvability is to be checked by search.
    Figure,
    /// Drawn in a figure whose unsolvability is argued by hand and too
    /// large to confirm by search.
    Proof,
    /// A standard extremal configuration carried over from a retract.
    Lifted,
    /// Found by the pebbling-number search and checked unsolvable.
    Search,
}

impl ConfigSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Figure => "a figure",
            Self::Proof => "a hand proof",
            Self::Lifted => "a retract",
            Self::Search => "search",
        }
    }
}

impl FromStr for ConfigSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "figure" => Ok(Self::Figure),
            "proof" => Ok(Self::Proof),
            "lifted" => Ok(Self::Lifted),
            "search" => Ok(Self::Search),
            _ => Err(Error::OutOfRange(format!("unknown config source {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedConfig {
    pub info: ConfigInfo,
    pub graph: Graph,
    pub target: Vertex,
    pub config: Configuration,
}

/// Index line of a strategy set, with the fraction and bound it was
/// published with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyInfo {
    pub id: String,
    pub graph: String,
    pub root: String,
    pub file: String,
    /// Numerator and denominator as stated, unreduced.
    pub stated: Option<(u64, u64)>,
    pub concluded: Option<u64>,
    pub note: Option<String>,
}

impl StrategyInfo {
    /// True when the index records that the set does not validate.
    pub fn expected_invalid(&self) -> bool {
        self.note.as_deref().is_some_and(|n| n.contains("invalid"))
    }

    pub fn is_patched(&self) -> bool {
        self.note.as_deref().is_some_and(|n| n.contains("patched"))
    }

    pub fn stated_text(&self) -> String {
        match self.stated {
            Some((a, b)) => format!("{a}/{b}"),
            None => "-".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedStrategySet {
    pub info: StrategyInfo,
    pub graph: Graph,
    pub set: StrategySet,
}

/// A retract map together with where its source came from.
#[derive(Clone, Debug)]
pub struct NamedRetract {
    pub id: String,
    pub graph_id: String,
    pub target_id: String,
    /// Vertices of the full graph kept in the source, indexed by source id;
    /// `None` when the source is the whole graph.
    pub induced: Option<Vec<Vertex>>,
    pub map: RetractMap,
}

impl NamedRetract {
    /// Vertex of the full graph behind source vertex `v`.
    pub fn lift_vertex(&self, v: Vertex) -> Vertex {
        match &self.induced {
            Some(keep) => keep[v],
            None => v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    Graph,
    Formula,
    ConstructionUnavailable,
}

/// One expected row: `(id, n, D, lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub id: String,
    pub n: u64,
    pub diameter: u64,
    pub lower: u64,
    pub upper: u64,
    pub kind: RowKind,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} D={} [{}, {}]", self.id, self.n, self.diameter, self.lower, self.upper)
    }
}

/// Expected bounds: explicit rows plus the parameterised flower row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1 {
    pub rows: Vec<TableRow>,
    /// Ids of families given by formula, such as `flower:m`.
    pub formulas: Vec<String>,
}

impl Table1 {
    /// The explicit row, or the flower formula evaluated at `m`.
    pub fn expectation(&self, id: &str) -> Option<TableRow> {
        if let Some(r) = self.rows.iter().find(|r| r.id == id) {
            return Some(r.clone());
        }
        let m: u64 = id.strip_prefix("flower:")?.parse().ok()?;
        if !self.formulas.iter().any(|f| f == "flower:m") || m < 7 || m.is_multiple_of(2) {
            return None;
        }
        Some(flower_row(m))
    }
}

/// The flower formula row for odd `m >= 7`.
pub fn flower_row(m: u64) -> TableRow {
    let k = ((m - 1) / 2) as u32;
    TableRow {
        id: format!("flower:{m}"),
        n: 4 * m,
        diameter: k as u64 + 2,
        lower: flower_lower(k),
        upper: flower_upper(k),
        kind: RowKind::Formula,
    }
}

/// Outcome of revalidating one entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub kind: EntryKind,
    pub ok: bool,
    pub detail: String,
}

/// Text files of a corpus keyed by path relative to its root.
#[derive(Clone, Debug)]
pub struct Corpus {
    files: BTreeMap<String, String>,
}

impl Default for Corpus {
    fn default() -> Self {
        Self::embedded()
    }
}

fn tsv_rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').map(str::trim).collect()))
}

fn dash(s: &str) -> Option<&str> {
    (s != "-" && !s.is_empty()).then_some(s)
}

impl Corpus {
    pub fn embedded() -> Self {
        Self {
            files: EMBEDDED.iter().map(|&(p, t)| (p.to_string(), t.to_string())).collect(),
        }
    }

    /// Reads `graphs/`, `configs/`, `strategies/`, `retracts/` and
    /// `table1.tsv` under `dir`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let io = |p: &Path, e: std::io::Error| Error::Io(format!("{}: {e}", p.display()));
        let mut files = BTreeMap::new();
        for sub in SUBDIRS {
            let d = dir.join(sub);
            if !d.is_dir() {
                continue;
            }
            for entry in std::fs::read_dir(&d).map_err(|e| io(&d, e))? {
                let p = entry.map_err(|e| io(&d, e))?.path();
                if p.is_file() {
                    let name = p.file_name().unwrap_or_default().to_string_lossy();
                    let text = std::fs::read_to_string(&p).map_err(|e| io(&p, e))?;
                    files.insert(format!("{sub}/{name}"), text);
                }
            }
        }
        let t = dir.join("table1.tsv");
        if t.is_file() {
            files.insert("table1.tsv".into(), std::fs::read_to_string(&t).map_err(|e| io(&t, e))?);
        }
        Ok(Self { files })
    }

    fn file(&self, rel: &str) -> Result<&str> {
        self.files
            .get(rel)
            .map(String::as_str)
            .ok_or_else(|| Error::Io(format!("corpus file {rel} missing")))
    }

    pub fn graph_infos(&self) -> Result<Vec<GraphInfo>> {
        let text = self.file("graphs/index.tsv")?;
        tsv_rows(text)
            .map(|(line, f)| {
                let [id, file, n, cubic, d, girth] = f[..] else {
                    return Err(parse_err(line, "graphs/index.tsv wants 6 columns"));
                };
                let num = |s: &str| s.parse::<u32>().map_err(|_| parse_err(line, format!("bad number {s:?}")));
                Ok(GraphInfo {
                    id: id.into(),
                    file: file.into(),
                    n: num(n)? as usize,
                    cubic: cubic == "yes",
                    diameter: num(d)?,
                    girth: num(girth)?,
                })
            })
            .collect()
    }

    /// Resolves `petersen`, `cycle:N`, `path:N`, `flower:M`, `blanusa:1`,
    /// `blanusa:2`, `watkins` and any other id listed in the graph index.
    pub fn graph(&self, id: &str) -> Result<Graph> {
        if let Some((fam, arg)) = id.split_once(':') {
            let num = || arg.parse::<usize>().map_err(|_| Error::UnknownId(id.into()));
            match fam {
                "cycle" => return cycle(num()?),
                "path" => return path(num()?),
                "flower" => return flower(num()?),
                _ => {}
            }
        }
        let info = self
            .graph_infos()?
            .into_iter()
            .find(|g| g.id == id)
            .ok_or_else(|| Error::UnknownId(id.into()))?;
        Graph::parse(self.file(&format!("graphs/{}", info.file))?)
    }

    /// One root per vertex orbit: the conventional names for the families
    /// that have them, otherwise the least vertex of each computed orbit.
    pub fn orbit_representatives(&self, id: &str, g: &Graph) -> Vec<Vertex> {
        let names: &[&str] = match id.split_once(':') {
            Some(("flower", _)) => &["v0", "z0", "x0"],
            _ if id == "blanusa:2" => &["x1", "x2", "x3", "z1", "z2", "z3"],
            _ => &[],
        };
        match names.iter().map(|s| g.vertex(s).ok()).collect::<Option<Vec<_>>>() {
            Some(v) if !v.is_empty() => v,
            _ => g.orbit_representatives(),
        }
    }

    pub fn config_infos(&self) -> Result<Vec<ConfigInfo>> {
        let text = self.file("configs/index.tsv")?;
        tsv_rows(text)
            .map(|(line, f)| {
                let [id, graph, target, size, file, source] = f[..] else {
                    return Err(parse_err(line, "configs/index.tsv wants 6 columns"));
                };
                Ok(ConfigInfo {
                    id: id.into(),
                    graph: graph.into(),
                    target: target.into(),
                    size: size.parse().map_err(|_| parse_err(line, "bad size"))?,
                    file: file.into(),
                    source: source.parse().map_err(|e: Error| parse_err(line, e.to_string()))?,
                })
            })
            .collect()
    }

    pub fn named_config(&self, id: &str) -> Result<NamedConfig> {
        let info = self
            .config_infos()?
            .into_iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::UnknownId(id.into()))?;
        let graph = self.graph(&info.graph)?;
        let target = graph.vertex(&info.target)?;
        let config = Configuration::parse(&graph, self.file(&format!("configs/{}", info.file))?)?;
        Ok(NamedConfig {
            info,
            graph,
            target,
            config,
        })
    }

    pub fn strategy_infos(&self) -> Result<Vec<StrategyInfo>> {
        let text = self.file("strategies/index.tsv")?;
        tsv_rows(text)
            .map(|(line, f)| {
                let [id, graph, root, file, stated, concluded, note] = f[..] else {
                    return Err(parse_err(line, "strategies/index.tsv wants 7 columns"));
                };
                let stated = match dash(stated) {
                    None => None,
                    Some(s) => {
                        let (a, b) = s.split_once('/').ok_or_else(|| parse_err(line, "stated value wants a/b"))?;
                        let p = |x: &str| x.parse::<u64>().map_err(|_| parse_err(line, "bad fraction"));
                        Some((p(a)?, p(b)?))
                    }
                };
                let concluded = dash(concluded)
                    .map(|c| c.parse().map_err(|_| parse_err(line, "bad bound")))
                    .transpose()?;
                Ok(StrategyInfo {
                    id: id.into(),
                    graph: graph.into(),
                    root: root.into(),
                    file: file.into(),
                    stated,
                    concluded,
                    note: dash(note).map(str::to_string),
                })
            })
            .collect()
    }

    pub fn strategy_set(&self, id: &str) -> Result<NamedStrategySet> {
        let info = self
            .strategy_infos()?
            .into_iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownId(id.into()))?;
        let graph = self.graph(&info.graph)?;
        let set = StrategySet::parse(&graph, id, self.file(&format!("strategies/{}", info.file))?)?;
        if set.graph_id != info.graph || graph.label(set.root) != info.root {
            return Err(Error::Hypothesis(format!("{id}: file header disagrees with the index")));
        }
        Ok(NamedStrategySet { info, graph, set })
    }

    /// Sets for the given graph id, in index order.
    pub fn strategy_sets_for(&self, graph_id: &str) -> Result<Vec<NamedStrategySet>> {
        self.strategy_infos()?
            .iter()
            .filter(|s| s.graph == graph_id)
            .map(|s| self.strategy_set(&s.id))
            .collect()
    }

    pub fn retract_ids(&self) -> Vec<String> {
        self.files
            .keys()
            .filter_map(|k| k.strip_prefix("retracts/")?.strip_suffix(".map"))
            .map(str::to_string)
            .collect()
    }

    /// Parses `retracts/<id>.map`: `source <graph>`, optional
    /// `induce <v>...`, `target <graph>`, `embed <h> <g>` lines and
    /// `<g> <h>` image lines. Embedded vertices map to their own image.
    pub fn retract(&self, id: &str) -> Result<NamedRetract> {
        let text = self
            .files
            .get(&format!("retracts/{id}.map"))
            .ok_or_else(|| Error::UnknownId(id.into()))?;
        let mut source_id = None;
        let mut target_id = None;
        let mut keep_names: Option<Vec<String>> = None;
        let mut embeds = Vec::new();
        let mut images = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[..] {
                ["source", s] => source_id = Some(s.to_string()),
                ["target", t] => target_id = Some(t.to_string()),
                ["induce", ..] => keep_names = Some(toks[1..].iter().map(|s| s.to_string()).collect()),
                ["embed", h, g] => embeds.push((i + 1, h.to_string(), g.to_string())),
                [g, h] => images.push((i + 1, g.to_string(), h.to_string())),
                _ => return Err(parse_err(i + 1, format!("unexpected line {line:?}"))),
            }
        }
        let source_id = source_id.ok_or_else(|| parse_err(1, "missing \"source\" line"))?;
        let target_id = target_id.ok_or_else(|| parse_err(1, "missing \"target\" line"))?;
        let full = self.graph(&source_id)?;
        let (source, induced) = match keep_names {
            Some(names) => {
                let keep = names.iter().map(|s| full.vertex(s)).collect::<Result<Vec<_>>>()?;
                let (sub, keep) = full.induced(&keep)?;
                (sub, Some(keep))
            }
            None => (full, None),
        };
        let target = self.graph(&target_id)?;
        let mut map = vec![None; source.n()];
        let mut embedding = vec![usize::MAX; target.n()];
        for (line, h, g) in &embeds {
            let h = target.vertex(h).map_err(|_| parse_err(*line, format!("unknown target vertex {h:?}")))?;
            let g = source.vertex(g).map_err(|_| parse_err(*line, format!("unknown source vertex {g:?}")))?;
            embedding[h] = g;
            map[g] = Some(h);
        }
        for (line, g, h) in &images {
            let g = source.vertex(g).map_err(|_| parse_err(*line, format!("unknown source vertex {g:?}")))?;
            let h = target.vertex(h).map_err(|_| parse_err(*line, format!("unknown target vertex {h:?}")))?;
            if map[g].replace(h).is_some() {
                return Err(parse_err(*line, format!("image of {} given twice", source.label(g))));
            }
        }
        let embedding = if embeds.is_empty() {
            None
        } else {
            if let Some(h) = embedding.iter().position(|&g| g == usize::MAX) {
                return Err(Error::RetractFailed(format!("target vertex {h} has no embedded copy")));
            }
            Some(embedding)
        };
        Ok(NamedRetract {
            id: id.into(),
            graph_id: source_id,
            target_id,
            induced,
            map: RetractMap::new(id, source, target, map, embedding)?,
        })
    }

    /// The expected table.
    pub fn table1(&self) -> Result<Table1> {
        let text = self.file("table1.tsv")?;
        let mut rows = Vec::new();
        let mut formulas = Vec::new();
        for (line, f) in tsv_rows(text) {
            let [id, n, d, lower, upper, kind] = f[..] else {
                return Err(parse_err(line, "table1.tsv wants 6 columns"));
            };
            let kind = match kind {
                "graph" => RowKind::Graph,
                "formula" => RowKind::Formula,
                "construction-unavailable" => RowKind::ConstructionUnavailable,
                _ => return Err(parse_err(line, format!("unknown row kind {kind:?}"))),
            };
            if kind == RowKind::Formula {
                formulas.push(id.to_string());
                continue;
            }
            let num = |s: &str| s.parse::<u64>().map_err(|_| parse_err(line, format!("bad number {s:?}")));
            rows.push(TableRow {
                id: id.into(),
                n: num(n)?,
                diameter: num(d)?,
                lower: num(lower)?,
                upper: num(upper)?,
                kind,
            });
        }
        Ok(Table1 { rows, formulas })
    }

    pub fn entries(&self) -> Result<Vec<CorpusEntry>> {
        let mut out = Vec::new();
        for g in self.graph_infos()? {
            out.push(CorpusEntry {
                description: format!("graph on {} vertices, diameter {}, girth {}", g.n, g.diameter, g.girth),
                id: g.id,
                kind: EntryKind::Graph,
            });
        }
        for c in self.config_infos()? {
            out.push(CorpusEntry {
                description: format!("size {} on {}, target {}, from {}", c.size, c.graph, c.target, c.source.as_str()),
                id: c.id,
                kind: EntryKind::Configuration,
            });
        }
        for s in self.strategy_infos()? {
            out.push(CorpusEntry {
                description: format!("{}-strategies on {}", s.root, s.graph),
                id: s.id,
                kind: EntryKind::StrategySet,
            });
        }
        for id in self.retract_ids() {
            out.push(CorpusEntry {
                description: "retract map".into(),
                id,
                kind: EntryKind::Retract,
            });
        }
        let t = self.table1()?;
        for r in &t.rows {
            out.push(CorpusEntry {
                id: r.id.clone(),
                kind: EntryKind::TableRow,
                description: r.to_string(),
            });
        }
        Ok(out)
    }

    /// Rechecks every entry against its recorded claims. Configurations are
    /// checked for size only; unsolvability needs the solver.
    pub fn revalidate(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let mut push = |id: &str, kind, res: std::result::Result<String, String>| {
            let (ok, detail) = match res {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            out.push(Check {
                id: id.into(),
                kind,
                ok,
                detail,
            });
        };
        match self.graph_infos() {
            Ok(infos) => {
                for info in infos {
                    push(&info.id, EntryKind::Graph, check_graph(self, &info));
                }
            }
            Err(e) => push("graphs/index.tsv", EntryKind::Graph, Err(e.to_string())),
        }
        match self.config_infos() {
            Ok(infos) => {
                for info in infos {
                    let res = self.named_config(&info.id).map_err(|e| e.to_string()).and_then(|c| {
                        if c.config.size() == info.size {
                            Ok(format!("size {}", info.size))
                        } else {
                            Err(format!("size {} but index says {}", c.config.size(), info.size))
                        }
                    });
                    push(&info.id, EntryKind::Configuration, res);
                }
            }
            Err(e) => push("configs/index.tsv", EntryKind::Configuration, Err(e.to_string())),
        }
        match self.strategy_infos() {
            Ok(infos) => {
                for info in infos {
                    push(&info.id, EntryKind::StrategySet, check_strategies(self, &info));
                }
            }
            Err(e) => push("strategies/index.tsv", EntryKind::StrategySet, Err(e.to_string())),
        }
        for id in self.retract_ids() {
            let res = self.retract(&id).map_err(|e| e.to_string()).and_then(|r| {
                let c = r.map.check();
                if c.is_retract() {
                    Ok(format!("{} edges preserved, {} collapsed", c.preserved, c.collapsed.len()))
                } else {
                    Err(format!(
                        "{} broken edges, {} unfixed vertices, {} missing embedded edges",
                        c.broken.len(),
                        c.unfixed.len(),
                        c.missing_edges.len()
                    ))
                }
            });
            push(&id, EntryKind::Retract, res);
        }
        match self.table1() {
            Ok(t) => {
                for r in t.rows {
                    let res = if r.lower <= r.upper {
                        Ok(format!("[{}, {}]", r.lower, r.upper))
                    } else {
                        Err("lower exceeds upper".into())
                    };
                    push(&r.id, EntryKind::TableRow, res);
                }
            }
            Err(e) => push("table1.tsv", EntryKind::TableRow, Err(e.to_string())),
        }
        out
    }
}

fn check_graph(c: &Corpus, info: &GraphInfo) -> std::result::Result<String, String> {
    let g = c.graph(&info.id).map_err(|e| e.to_string())?;
    let girth = g.girth().map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    if g.n() != info.n {
        bad.push(format!("n = {} (expected {})", g.n(), info.n));
    }
    if info.cubic && !(g.is_cubic() && 2 * g.edge_count() == 3 * g.n()) {
        bad.push("not cubic".to_string());
    }
    if g.diameter() != info.diameter {
        bad.push(format!("diameter {} (expected {})", g.diameter(), info.diameter));
    }
    if girth != info.girth {
        bad.push(format!("girth {girth} (expected {})", info.girth));
    }
    if bad.is_empty() {
        Ok(format!("n={} e={} D={} girth={}", g.n(), g.edge_count(), g.diameter(), girth))
    } else {
        Err(bad.join("; "))
    }
}

fn check_strategies(c: &Corpus, info: &StrategyInfo) -> std::result::Result<String, String> {
    let ns = c.strategy_set(&info.id).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();
    for s in &ns.set.strategies {
        for v in validate_strategy(&ns.graph, s) {
            problems.push(format!("{}: {}", s.name, v.describe(&ns.graph)));
        }
    }
    match (problems.is_empty(), info.expected_invalid()) {
        (true, false) => Ok(format!("{} strategies valid", ns.set.strategies.len())),
        (false, true) => Ok(format!("recorded as invalid: {}", problems.join("; "))),
        (true, true) => Err("recorded as invalid but validates".into()),
        (false, false) => Err(problems.join("; ")),
    }
}

/// Shorthand for `Corpus::embedded().graph(id)`.
pub fn graph(id: &str) -> Result<Graph> {
    Corpus::embedded().graph(id)
}

/// Shorthand for `Corpus::embedded().named_config(id)`.
pub fn named_config(id: &str) -> Result<NamedConfig> {
    Corpus::embedded().named_config(id)
}

/// Shorthand for `Corpus::embedded().table1()`.
pub fn table1_expectations() -> Result<Table1> {
    Corpus::embedded().table1()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_revalidates() {
        for c in Corpus::embedded().revalidate() {
            assert!(c.ok, "{} ({:?}): {}", c.id, c.kind, c.detail);
        }
    }

    #[test]
    fn from_dir_matches_embedded() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let a = Corpus::from_dir(dir).unwrap();
        let b = Corpus::embedded();
        assert_eq!(a.files, b.files);
    }

    #[test]
    fn ids_resolve() {
        let c = Corpus::embedded();
        for id in ["petersen", "cycle:5", "path:2", "flower:5", "blanusa:1", "blanusa:2", "watkins"] {
            c.graph(id).unwrap();
        }
        assert!(matches!(c.graph("cube"), Err(Error::UnknownId(_))));
        assert!(c.graph("flower:4").is_err());
        assert!(matches!(c.named_config("nope"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn table_formula_row() {
        let t = table1_expectations().unwrap();
        let r = t.expectation("flower:7").unwrap();
        assert_eq!((r.n, r.diameter, r.lower, r.upper), (28, 5, 41, 61));
        let r = t.expectation("flower:9").unwrap();
        assert_eq!((r.lower, r.upper), (73, 120));
        assert!(t.expectation("flower:8").is_none());
    }
}
