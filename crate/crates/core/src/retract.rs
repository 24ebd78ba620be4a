//! Retract maps between graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A map `phi: V(G) -> V(H)`, optionally with the copy of `H` inside `G`
/// that it should fix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractMap {
    pub name: String,
    pub source: Graph,
    pub target: Graph,
    map: Vec<Vertex>,
    /// `embedding[h]` is the vertex of `G` playing the role of `h`.
    embedding: Option<Vec<Vertex>>,
}

/// Edge-by-edge outcome of checking a map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RetractCheck {
    /// Edges of `G` sent onto edges of `H`.
    pub preserved: usize,
    /// Edges of `G` whose ends share an image.
    pub collapsed: Vec<(Vertex, Vertex)>,
    /// Edges of `G` whose images are distinct and non-adjacent.
    pub broken: Vec<(Vertex, Vertex)>,
    /// Vertices of `H` whose embedded copy is not sent back to them.
    pub unfixed: Vec<Vertex>,
    /// Embedded edges of `H` missing from `G`.
    pub missing_edges: Vec<(Vertex, Vertex)>,
}

impl RetractCheck {
    /// No edge broken and the embedded copy of `H` (if any) fixed.
    pub fn is_retract(&self) -> bool {
        self.broken.is_empty() && self.unfixed.is_empty() && self.missing_edges.is_empty()
    }

    /// Additionally no edge collapsed: a homomorphism onto `H`.
    pub fn is_strict(&self) -> bool {
        self.is_retract() && self.collapsed.is_empty()
    }
}

impl RetractMap {
    /// `map[g]` must be given for every vertex of `source`.
    pub fn new(
        name: impl Into<String>,
        source: Graph,
        target: Graph,
        map: Vec<Option<Vertex>>,
        embedding: Option<Vec<Vertex>>,
    ) -> Result<Self> {
        if map.len() != source.n() {
            return Err(Error::MapNotTotal(map.len().min(source.n())));
        }
        let mut total = Vec::with_capacity(map.len());
        for (v, img) in map.into_iter().enumerate() {
            let img = img.ok_or(Error::MapNotTotal(v))?;
            target.check(img)?;
            total.push(img);
        }
        if let Some(e) = &embedding {
            if e.len() != target.n() {
                return Err(Error::RetractFailed(format!(
                    "embedding lists {} vertices, target has {}",
                    e.len(),
                    target.n()
                )));
            }
            for &x in e {
                source.check(x)?;
            }
        }
        Ok(Self {
            name: name.into(),
            source,
            target,
            map: total,
            embedding,
        })
    }

    pub fn image(&self, v: Vertex) -> Vertex {
        self.map[v]
    }

    pub fn map(&self) -> &[Vertex] {
        &self.map
    }

    pub fn embedding(&self) -> Option<&[Vertex]> {
        self.embedding.as_deref()
    }

    pub fn check(&self) -> RetractCheck {
        let mut out = RetractCheck::default();
        for &(u, v) in self.source.edges() {
            let (a, b) = (self.map[u], self.map[v]);
            if a == b {
                out.collapsed.push((u, v));
            } else if self.target.adjacent(a, b) {
                out.preserved += 1;
            } else {
                out.broken.push((u, v));
            }
        }
        if let Some(e) = &self.embedding {
            for (h, &x) in e.iter().enumerate() {
                if self.map[x] != h {
                    out.unfixed.push(h);
                }
            }
            for &(a, b) in self.target.edges() {
                if !self.source.adjacent(e[a], e[b]) {
                    out.missing_edges.push((a, b));
                }
            }
        }
        out
    }
}

/// True iff every edge of `G` goes to an edge of `H` or to a single vertex,
/// and the embedded copy of `H`, when given, is fixed pointwise.
pub fn verify_retract(m: &RetractMap) -> bool {
    m.check().is_retract()
}

/// True iff every edge of `G` goes to an edge of `H` (no collapsing).
pub fn verify_retract_strict(m: &RetractMap) -> bool {
    m.check().is_strict()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn identity_is_a_retract() {
        let g = cycle(5);
        let m = RetractMap::new("id", g.clone(), g, (0..5).map(Some).collect(), Some((0..5).collect())).unwrap();
        assert!(verify_retract(&m));
        assert!(verify_retract_strict(&m));
    }

    #[test]
    fn partial_map_rejected() {
        let g = cycle(4);
        let h = cycle(4);
        let err = RetractMap::new("p", g, h, vec![Some(0), None, Some(2), Some(3)], None).unwrap_err();
        assert_eq!(err, Error::MapNotTotal(1));
    }

    #[test]
    fn broken_edge_detected() {
        let g = cycle(6);
        let h = cycle(6);
        let m = RetractMap::new("b", g, h, [0, 2, 2, 3, 4, 5].map(Some).to_vec(), None).unwrap();
        let c = m.check();
        assert_eq!(c.broken, vec![(0, 1)]);
        assert!(!verify_retract(&m));
    }
}
