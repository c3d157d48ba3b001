//! Isomorphism-class enumeration of small graphs in hereditary classes.
//!
//! Level `n` is generated from level `n - 1` by adding one vertex with every
//! possible neighbourhood, keeping one canonical representative per class.
//! Since the class is closed under vertex deletion, every member on `n`
//! vertices arises from a member on `n - 1` vertices.

use std::collections::BTreeMap;

use super::{CanonicalForm, Graph};
use crate::error::GraphError;

/// Largest order the enumerator accepts unless a caller raises it.
pub const DEFAULT_ENUMERATION_BOUND: usize = 9;

type Filter<'a> = Box<dyn Fn(&Graph) -> bool + Send + 'a>;

/// Lazy stream of canonical representatives, ordered by vertex count and then
/// by [`CanonicalForm`].
pub struct GraphEnumerator<'a> {
    filter: Filter<'a>,
    max_n: usize,
    level: Vec<Graph>,
    level_order: usize,
    next_index: usize,
    started: bool,
}

impl<'a> GraphEnumerator<'a> {
    /// `filter` must describe a class closed under induced subgraphs,
    /// otherwise members whose every one-vertex-deleted subgraph is rejected
    /// are missed.
    pub fn new(
        max_n: usize,
        bound: usize,
        filter: impl Fn(&Graph) -> bool + Send + 'a,
    ) -> Result<Self, GraphError> {
        if max_n > bound {
            return Err(GraphError::BoundExceeded { requested: max_n, bound });
        }
        Ok(GraphEnumerator {
            filter: Box::new(filter),
            max_n,
            level: Vec::new(),
            level_order: 0,
            next_index: 0,
            started: false,
        })
    }

    fn advance_level(&mut self) -> bool {
        if !self.started {
            self.started = true;
            let null = Graph::empty(0);
            self.level = if (self.filter)(&null) { vec![null] } else { Vec::new() };
            return true;
        }
        if self.level_order >= self.max_n || self.level.is_empty() {
            return false;
        }
        let n = self.level_order;
        let mut next: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
        for g in &self.level {
            for mask in 0u64..1 << n {
                let mut h = g.disjoint_union(&Graph::empty(1));
                for v in 0..n {
                    if mask >> v & 1 == 1 {
                        h.set_edge(v, n);
                    }
                }
                if (self.filter)(&h) {
                    next.insert(h.canonical_form(), ());
                }
            }
        }
        self.level = next.into_keys().map(|c| c.to_graph()).collect();
        self.level_order = n + 1;
        true
    }
}

impl Iterator for GraphEnumerator<'_> {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            if self.started && self.next_index < self.level.len() {
                self.next_index += 1;
                return Some(self.level[self.next_index - 1].clone());
            }
            if !self.advance_level() {
                return None;
            }
            self.next_index = 0;
        }
    }
}

/// All graphs on at most `max_n` vertices, one per isomorphism class.
pub fn enumerate_graphs(max_n: usize) -> Result<GraphEnumerator<'static>, GraphError> {
    GraphEnumerator::new(max_n, DEFAULT_ENUMERATION_BOUND, |_| true)
}
