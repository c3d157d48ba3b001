//! Simple undirected graphs over dense vertex indices `0..n`.
//!
//! Every surgery operation (induced subgraphs, unions, vertex removal) returns
//! or documents an explicit old-to-new index map so that named vertices of a
//! gadget survive composition.

mod blocks;
mod builder;
mod canon;
mod enumerate;
pub mod io;
mod matching;
pub mod named;

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

pub use blocks::{block_decomposition, BlockDecomposition};
pub use builder::GraphBuilder;
pub use canon::{are_isomorphic, canonical_labelling, CanonicalForm, Labelling};
pub use enumerate::{enumerate_graphs, GraphEnumerator, DEFAULT_ENUMERATION_BOUND};
pub use matching::{contains_induced, find_induced_embedding, AnchoredMatcher};

/// A set of vertex indices of some host graph.
pub type VertexSet = BTreeSet<usize>;

/// A simple finite undirected graph: no loops, no multi-edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices (`K₀` when `n == 0`).
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), order: n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set_edge(u, v);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_null(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Open neighbourhood `N(v)` as a set.
    pub fn neighbourhood(&self, v: usize) -> VertexSet {
        self.adj[v].ones().collect()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.iter().next_back() {
            Some(&v) if v >= self.order() => Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            }),
            _ => Ok(()),
        }
    }

    /// `G[s]`, together with the map from old index to new index
    /// (`None` for vertices outside `s`). New indices follow the order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        self.check_set(s)?;
        let mut map = vec![None; self.order()];
        for (new, &old) in s.iter().enumerate() {
            map[old] = Some(new);
        }
        let mut h = Graph::empty(s.len());
        for (new_u, &u) in s.iter().enumerate() {
            for v in self.adj[u].ones() {
                if let Some(new_v) = map[v] {
                    if new_v > new_u {
                        h.set_edge(new_u, new_v);
                    }
                }
            }
        }
        Ok((h, map))
    }

    /// Deletes the given vertices; the survivors keep their relative order.
    pub fn remove_vertices(&self, gone: &VertexSet) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
        self.check_set(gone)?;
        let keep: VertexSet = (0..self.order()).filter(|v| !gone.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Vertex-disjoint union. The vertices of `other` are shifted by
    /// `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.order();
        let mut g = Graph::empty(offset + other.order());
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + offset, v + offset);
        }
        g
    }

    /// `copies` vertex-disjoint copies of `self`; `nG` in the usual notation.
    pub fn repeat(&self, copies: usize) -> Graph {
        (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let mut g = Graph::empty(self.order());
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for w in self.adj[u].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff the graph has at most one component. `K₀` and `K₁` are
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `s` is an independent set.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|&u| s.iter().all(|&v| !self.has_edge(u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.order())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Free-function form of [`Graph::induced_subgraph`].
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<Option<usize>>), GraphError> {
    g.induced_subgraph(s)
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    g.disjoint_union(h)
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

pub fn is_connected(g: &Graph) -> bool {
    g.is_connected()
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn induced_subgraph_of_triangle_is_edge() {
        let (h, map) = complete(3).induced_subgraph(&set(&[0, 1])).unwrap();
        assert_eq!(h, complete(2));
        assert_eq!(map, vec![Some(0), Some(1), None]);
    }

    #[test]
    fn induced_subgraph_of_empty_set_is_null() {
        let (h, _) = cycle(5).induced_subgraph(&VertexSet::new()).unwrap();
        assert!(h.is_null());
    }

    #[test]
    fn induced_subgraph_of_path_keeps_only_internal_edges() {
        let (h, _) = path(4).induced_subgraph(&set(&[0, 1, 3])).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        assert!(matches!(
            path(3).induced_subgraph(&set(&[0, 7])),
            Err(GraphError::VertexOutOfRange { vertex: 7, order: 3 })
        ));
    }

    #[test]
    fn disjoint_union_examples() {
        let two_k2 = complete(2).disjoint_union(&complete(2));
        assert_eq!((two_k2.order(), two_k2.size()), (4, 2));
        assert_eq!(cycle(5).disjoint_union(&Graph::empty(0)), cycle(5));
        let three_k3 = complete(3).repeat(3);
        assert_eq!((three_k3.order(), three_k3.size()), (9, 9));
        assert_eq!(three_k3.components().len(), 3);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complete(3).complement(), Graph::empty(3));
        assert!(are_isomorphic(&path(4).complement(), &path(4)));
        assert!(Graph::empty(0).complement().is_null());
    }

    #[test]
    fn connectivity_conventions() {
        assert!(complete(2).is_connected());
        assert!(!complete(2).repeat(2).is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
    }

    #[test]
    fn loops_rejected() {
        assert!(matches!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1))));
    }
}
