//! Simple connected graphs with cached metric data.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

pub type Vertex = usize;

/// Marker for "unreachable" in distance arrays over subgraphs.
pub const UNREACHABLE: u32 = u32::MAX;

/// An immutable simple connected graph.
///
/// All-pairs distances are computed once at construction.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
    labels: Vec<Option<String>>,
    by_label: HashMap<String, Vertex>,
    dist: Vec<u32>,
    diameter: u32,
    girth: Option<u32>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph on `0..n`. Fails on loops, repeated edges, bad ids or
    /// a disconnected result.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex(x.to_string()));
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if adj[a].contains(&b) {
                return Err(Error::DuplicateEdge(a, b));
            }
            adj[a].push(b);
            adj[b].push(a);
            list.push((a, b));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        list.sort_unstable();

        let mut dist = vec![UNREACHABLE; n * n];
        for s in 0..n {
            let row = bfs(&adj, s, |_| false);
            dist[s * n..(s + 1) * n].copy_from_slice(&row);
        }
        if dist.contains(&UNREACHABLE) {
            return Err(Error::Disconnected);
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);
        let girth = shortest_cycle(&adj);
        Ok(Self {
            n,
            adj,
            edges: list,
            labels: vec![None; n],
            by_label: HashMap::new(),
            dist,
            diameter,
            girth,
        })
    }

    /// Attaches vertex names. Names must be unique and must not look like a
    /// bare integer id, so lookups stay unambiguous.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = (Vertex, S)>) -> Result<Self> {
        for (v, name) in labels {
            let name = name.into();
            if v >= self.n {
                return Err(Error::InvalidVertex(v.to_string()));
            }
            if name.is_empty() || name.parse::<usize>().is_ok() || name.contains(char::is_whitespace) {
                return Err(Error::InvalidVertex(name));
            }
            if let Some(&w) = self.by_label.get(&name) {
                if w != v {
                    return Err(Error::InvalidVertex(format!("{name} (label reused)")));
                }
            }
            if let Some(old) = self.labels[v].take() {
                self.by_label.remove(&old);
            }
            self.by_label.insert(name.clone(), v);
            self.labels[v] = Some(name);
        }
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|nb| nb.len() == d)
    }

    pub fn is_cubic(&self) -> bool {
        self.is_regular(3)
    }

    /// Distance without bounds checking beyond the slice index.
    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Row of distances from `u`.
    pub fn dist_row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<u32> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.dist(u, v))
    }

    pub fn eccentricity(&self, v: Vertex) -> u32 {
        self.dist_row(v).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn girth(&self) -> Result<u32> {
        self.girth.ok_or(Error::NoCycle)
    }

    /// `N_k[w]`: every vertex within distance `k` of `w`, sorted.
    pub fn ball(&self, w: Vertex, k: u32) -> Result<Vec<Vertex>> {
        self.check(w)?;
        Ok(self.vertices().filter(|&x| self.dist(w, x) <= k).collect())
    }

    /// Vertices lying on at least one shortest `u`-`v` path.
    pub fn geodesic_union(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        self.check(u)?;
        self.check(v)?;
        let d = self.dist(u, v);
        Ok(self
            .vertices()
            .filter(|&x| self.dist(u, x) + self.dist(x, v) == d)
            .collect())
    }

    pub fn label(&self, v: Vertex) -> String {
        match self.labels.get(v) {
            Some(Some(s)) => s.clone(),
            _ => v.to_string(),
        }
    }

    pub fn has_labels(&self) -> bool {
        self.labels.iter().any(Option::is_some)
    }

    /// Resolves a vertex by label first, then as an integer id.
    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        let name = name.trim();
        if let Some(&v) = self.by_label.get(name) {
            return Ok(v);
        }
        match name.parse::<usize>() {
            Ok(v) if v < self.n => Ok(v),
            _ => Err(Error::InvalidVertex(name.to_string())),
        }
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v.to_string()))
        }
    }

    /// Subgraph induced by `keep` (in the given order); labels carry over.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            self.check(v)?;
            if index[v] != usize::MAX {
                return Err(Error::InvalidVertex(format!("{} (listed twice)", self.label(v))));
            }
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        let g = Graph::new(keep.len(), edges)?;
        let labels: Vec<_> = keep
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| self.labels[v].clone().map(|s| (i, s)))
            .collect();
        Ok((g.with_labels(labels)?, keep.to_vec()))
    }

    /// Copy of the graph without the listed edges. Fails if one is missing
    /// or the result is disconnected.
    pub fn without_edges(&self, remove: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut gone = Vec::new();
        for &(u, v) in remove {
            if !self.adjacent(u, v) {
                return Err(Error::NotAdjacent(u, v));
            }
            gone.push((u.min(v), u.max(v)));
        }
        let edges = self.edges.iter().copied().filter(|e| !gone.contains(e));
        let labels: Vec<_> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.clone().map(|s| (i, s)))
            .collect();
        Graph::new(self.n, edges)?.with_labels(labels)
    }

    /// Parses the text format: a header `n m`, `m` edge lines `u v`, then
    /// optional `# id name` label lines. Other `#` lines are comments.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if let [id, name] = toks[..] {
                    if let Ok(id) = id.parse::<usize>() {
                        labels.push((lineno, id, name.to_string()));
                    }
                }
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums: Vec<usize> = toks
                .iter()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err(lineno, format!("expected two integers, got {line:?}")))?;
            if nums.len() != 2 {
                return Err(parse_err(lineno, format!("expected two integers, got {line:?}")));
            }
            match header {
                None => header = Some((nums[0], nums[1])),
                Some((n, _)) => {
                    for &x in &nums {
                        if x >= n {
                            return Err(parse_err(lineno, format!("vertex {x} out of range 0..{n}")));
                        }
                    }
                    if nums[0] == nums[1] {
                        return Err(parse_err(lineno, format!("loop at {}", nums[0])));
                    }
                    let e = (nums[0].min(nums[1]), nums[0].max(nums[1]));
                    if edges.contains(&e) {
                        return Err(parse_err(lineno, format!("duplicate edge {} {}", e.0, e.1)));
                    }
                    edges.push(e);
                }
            }
        }
        let (n, m) = header.ok_or_else(|| parse_err(1, "missing header \"n m\""))?;
        if edges.len() != m {
            return Err(parse_err(0, format!("header promises {m} edges, found {}", edges.len())));
        }
        for &(lineno, id, _) in &labels {
            if id >= n {
                return Err(parse_err(lineno, format!("label for vertex {id} out of range")));
            }
        }
        let g = Graph::new(n, edges)?;
        g.with_labels(labels.into_iter().map(|(_, id, s)| (id, s)))
    }

    /// Canonical text form: sorted edges, then labels in id order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        for (v, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                let _ = writeln!(out, "# {v} {l}");
            }
        }
        out
    }
}

/// BFS distances from `s` in the graph with `removed` vertices deleted.
pub(crate) fn bfs(adj: &[Vec<Vertex>], s: Vertex, removed: impl Fn(Vertex) -> bool) -> Vec<u32> {
    let mut d = vec![UNREACHABLE; adj.len()];
    if removed(s) {
        return d;
    }
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if d[y] == UNREACHABLE && !removed(y) {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

impl Graph {
    /// Distances from `s` in `G` minus the vertex set `removed`.
    pub fn distances_avoiding(&self, s: Vertex, removed: &[Vertex]) -> Vec<u32> {
        bfs(&self.adj, s, |x| removed.contains(&x))
    }
}

impl Graph {
    /// An automorphism sending `u` to `v`, if one exists.
    pub fn automorphism_mapping(&self, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
        if u >= self.n || v >= self.n || self.profile(u) != self.profile(v) {
            return None;
        }
        // breadth-first order from u; every later vertex has an earlier neighbour
        let row = self.dist_row(u);
        let mut order: Vec<Vertex> = self.vertices().collect();
        order.sort_by_key(|&x| (row[x], x));
        let anchor: Vec<Vertex> = order
            .iter()
            .map(|&x| self.adj[x].iter().copied().find(|&y| row[y] + 1 == row[x]).unwrap_or(x))
            .collect();
        let mut f = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        f[u] = v;
        used[v] = true;
        if self.extend(&order, &anchor, 1, &mut f, &mut used) {
            Some(f)
        } else {
            None
        }
    }

    /// Vertex orbits under the automorphism group, each sorted, ordered by
    /// their least vertex.
    pub fn orbits(&self) -> Vec<Vec<Vertex>> {
        let mut orbit_of = vec![usize::MAX; self.n];
        let mut orbits: Vec<Vec<Vertex>> = Vec::new();
        for v in self.vertices() {
            if orbit_of[v] != usize::MAX {
                continue;
            }
            let found = orbits
                .iter()
                .position(|o| self.automorphism_mapping(o[0], v).is_some());
            match found {
                Some(i) => {
                    orbit_of[v] = i;
                    orbits[i].push(v);
                }
                None => {
                    orbit_of[v] = orbits.len();
                    orbits.push(vec![v]);
                }
            }
        }
        orbits
    }

    /// Least vertex of every orbit.
    pub fn orbit_representatives(&self) -> Vec<Vertex> {
        self.orbits().into_iter().map(|o| o[0]).collect()
    }

    fn profile(&self, u: Vertex) -> Vec<u32> {
        let mut p = vec![0u32; self.diameter as usize + 1];
        for &d in self.dist_row(u) {
            p[d as usize] += 1;
        }
        p.push(self.degree(u) as u32);
        p
    }

    fn extend(&self, order: &[Vertex], anchor: &[Vertex], i: usize, f: &mut [Vertex], used: &mut [bool]) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        let fa = f[anchor[i]];
        for &y in &self.adj[fa] {
            if used[y] || self.degree(y) != self.degree(x) {
                continue;
            }
            let fits = order[..i].iter().all(|&w| self.dist(x, w) == self.dist(y, f[w]));
            if !fits {
                continue;
            }
            f[x] = y;
            used[y] = true;
            if self.extend(order, anchor, i + 1, f, used) {
                return true;
            }
            used[y] = false;
            f[x] = usize::MAX;
        }
        false
    }
}

fn shortest_cycle(adj: &[Vec<Vertex>]) -> Option<u32> {
    let n = adj.len();
    let mut best: Option<u32> = None;
    let mut d = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        d.fill(UNREACHABLE);
        parent.fill(usize::MAX);
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if let Some(b) = best {
                if 2 * d[x] >= b {
                    break;
                }
            }
            for &y in &adj[x] {
                if d[y] == UNREACHABLE {
                    d[y] = d[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    let len = d[x] + d[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
