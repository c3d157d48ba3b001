use std::collections::BTreeSet;

use super::Graph;
use crate::error::GraphError;

/// Incremental graph construction with explicit vertex allocation.
///
/// Gadget composition goes through [`GraphBuilder::embed`]: every vertex of
/// the embedded graph either binds to an existing vertex (vertex
/// identification) or receives a fresh index.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    order: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from a copy of `g`, keeping its indices.
    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder {
            order: g.order(),
            edges: g.edges().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_vertex(&mut self) -> usize {
        self.order += 1;
        self.order - 1
    }

    pub fn add_vertices(&mut self, k: usize) -> std::ops::Range<usize> {
        let start = self.order;
        self.order += k;
        start..self.order
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.order || v >= self.order {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), order: self.order });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Copies `g` in. `bind[i] = Some(w)` identifies vertex `i` of `g` with
    /// the existing vertex `w`; unbound vertices get fresh indices in
    /// increasing order. Returns the map from `g`'s indices to builder
    /// indices. Fails if an edge of `g` would collapse onto a single vertex.
    pub fn embed(&mut self, g: &Graph, bind: &[Option<usize>]) -> Result<Vec<usize>, GraphError> {
        assert_eq!(bind.len(), g.order());
        for &w in bind.iter().flatten() {
            if w >= self.order {
                return Err(GraphError::VertexOutOfRange { vertex: w, order: self.order });
            }
        }
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (bind[u], bind[v]) {
                if a == b {
                    return Err(GraphError::SelfLoop(a));
                }
            }
        }
        let map: Vec<usize> = bind
            .iter()
            .map(|b| match b {
                Some(w) => *w,
                None => self.add_vertex(),
            })
            .collect();
        for (u, v) in g.edges() {
            self.add_edge(map[u], map[v])?;
        }
        Ok(map)
    }

    pub fn build(&self) -> Graph {
        let mut g = Graph::empty(self.order);
        for &(u, v) in &self.edges {
            g.set_edge(u, v);
        }
        g
    }
}
