//! Exact `(P₁, …, Pₙ)`-partition search and strong-uniqueness checking.
//!
//! The search assigns vertices in index order, trying parts in index order,
//! and abandons a branch as soon as the part just extended contains a
//! forbidden graph of its property. Only copies lying entirely inside
//! already-assigned vertices are ever detected, so no valid completion is
//! pruned. Results come out in lexicographic order of the assignment vector.

mod uniqueness;

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::graph::{Graph, VertexSet};
use crate::properties::Property;

pub use uniqueness::{
    check_strongly_unique, check_strongly_unique_with, search_unique, UniquenessReport,
};

/// Default ceiling on `parts^vertices` for uncapped exhaustive enumeration.
pub const DEFAULT_CEILING: u64 = 1 << 24;

/// An assignment of every vertex to one of `n_parts` ordered parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderedPartition {
    n_parts: usize,
    assignment: Vec<usize>,
}

impl OrderedPartition {
    pub fn new(n_parts: usize, assignment: Vec<usize>) -> Result<Self, SolverError> {
        if let Some((vertex, &part)) = assignment.iter().enumerate().find(|(_, &p)| p >= n_parts) {
            return Err(SolverError::PartOutOfRange { vertex, part, parts: n_parts });
        }
        Ok(OrderedPartition { n_parts, assignment })
    }

    pub fn from_parts(order: usize, parts: &[VertexSet]) -> Result<Self, SolverError> {
        let mut assignment = vec![usize::MAX; order];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= order {
                    return Err(SolverError::Graph(crate::GraphError::VertexOutOfRange { vertex: v, order }));
                }
                if assignment[v] != usize::MAX {
                    return Err(SolverError::PartOutOfRange { vertex: v, part: i, parts: parts.len() });
                }
                assignment[v] = i;
            }
        }
        if let Some(v) = assignment.iter().position(|&p| p == usize::MAX) {
            return Err(SolverError::PartOutOfRange { vertex: v, part: usize::MAX, parts: parts.len() });
        }
        Ok(OrderedPartition { n_parts: parts.len(), assignment })
    }

    pub fn n_parts(&self) -> usize {
        self.n_parts
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn part(&self, i: usize) -> VertexSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == i)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn parts(&self) -> Vec<VertexSet> {
        (0..self.n_parts).map(|i| self.part(i)).collect()
    }

    /// Re-checks every part against its property, returning the first
    /// offending part with a forbidden-graph witness.
    pub fn validate(&self, g: &Graph, props: &[Property]) -> Result<(), (usize, VertexSet)> {
        assert_eq!(props.len(), self.n_parts, "one property per part");
        if self.assignment.len() != g.order() {
            return Err((usize::MAX, VertexSet::new()));
        }
        for (i, p) in props.iter().enumerate() {
            let part = self.part(i);
            let (h, _) = g.induced_subgraph(&part).expect("parts are in range");
            if let Some((_, w)) = p.first_violation(&h) {
                let back: Vec<usize> = part.iter().copied().collect();
                return Err((i, w.into_iter().map(|x| back[x]).collect()));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph, props: &[Property]) -> bool {
        self.validate(g, props).is_ok()
    }
}

/// Enumeration limits. `ceiling` bounds `parts^vertices` when no `cap` is
/// given; `node_budget` bounds search nodes regardless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub ceiling: u64,
    pub cap: Option<usize>,
    pub node_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ceiling: DEFAULT_CEILING,
            cap: None,
            node_budget: u64::MAX,
        }
    }
}

impl Limits {
    pub fn capped(cap: usize) -> Self {
        Limits { cap: Some(cap), ..Limits::default() }
    }

    fn check_ceiling(&self, parts: usize, vertices: usize) -> Result<(), SolverError> {
        if self.cap.is_some() {
            return Ok(());
        }
        let mut total: u64 = 1;
        for _ in 0..vertices {
            total = total.saturating_mul(parts as u64);
            if total > self.ceiling {
                return Err(SolverError::CeilingExceeded { parts, vertices, ceiling: self.ceiling });
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    g: &'a Graph,
    props: &'a [Property],
    fixed: Option<&'a [Option<usize>]>,
    parts: Vec<FixedBitSet>,
    assignment: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn descend(
        &mut self,
        v: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, SolverError> {
        if v == self.g.order() {
            return Ok(visit(&self.assignment));
        }
        let choices = match self.fixed.and_then(|f| f[v]) {
            Some(c) => c..c + 1,
            None => 0..self.props.len(),
        };
        for c in choices {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SolverError::NodeBudget(self.budget));
            }
            self.parts[c].insert(v);
            if self.props[c].violation_through(self.g, &self.parts[c], v).is_none() {
                self.assignment[v] = c;
                if self.descend(v + 1, visit)?.is_break() {
                    self.parts[c].set(v, false);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.parts[c].set(v, false);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Streams every valid ordered partition (extending `fixed`, if given) to
/// `visit`, in lexicographic order of assignment vectors, until `visit`
/// breaks. Returns the number of partitions visited.
pub fn for_each_partition(
    g: &Graph,
    props: &[Property],
    fixed: Option<&[Option<usize>]>,
    node_budget: u64,
    mut visit: impl FnMut(OrderedPartition) -> ControlFlow<()>,
) -> Result<usize, SolverError> {
    if props.is_empty() {
        return Err(SolverError::NoProperties);
    }
    if let Some(f) = fixed {
        if f.len() != g.order() {
            return Err(SolverError::WrongLength { got: f.len(), expected: g.order() });
        }
        if let Some((vertex, part)) = f.iter().enumerate().find_map(|(v, c)| c.filter(|&c| c >= props.len()).map(|c| (v, c))) {
            return Err(SolverError::PartOutOfRange { vertex, part, parts: props.len() });
        }
    }
    let n_parts = props.len();
    let mut search = Search {
        g,
        props,
        fixed,
        parts: vec![FixedBitSet::with_capacity(g.order()); n_parts],
        assignment: vec![0; g.order()],
        nodes: 0,
        budget: node_budget,
    };
    let mut count = 0;
    let _ = search.descend(0, &mut |a| {
        count += 1;
        visit(OrderedPartition { n_parts, assignment: a.to_vec() })
    })?;
    Ok(count)
}

/// The lexicographically least valid ordered partition, if any.
pub fn find_partition(g: &Graph, props: &[Property]) -> Result<Option<OrderedPartition>, SolverError> {
    find_partition_extending(g, props, None)
}

/// As [`find_partition`], with some vertices pinned to given parts.
pub fn find_partition_extending(
    g: &Graph,
    props: &[Property],
    fixed: Option<&[Option<usize>]>,
) -> Result<Option<OrderedPartition>, SolverError> {
    let mut found = None;
    for_each_partition(g, props, fixed, u64::MAX, |p| {
        found = Some(p);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// All valid ordered partitions, up to `cap`. Without a cap the naive
/// assignment count must stay within [`DEFAULT_CEILING`].
pub fn enumerate_partitions(
    g: &Graph,
    props: &[Property],
    cap: Option<usize>,
) -> Result<Vec<OrderedPartition>, SolverError> {
    enumerate_partitions_with(g, props, &Limits { cap, ..Limits::default() })
}

pub fn enumerate_partitions_with(
    g: &Graph,
    props: &[Property],
    limits: &Limits,
) -> Result<Vec<OrderedPartition>, SolverError> {
    if props.is_empty() {
        return Err(SolverError::NoProperties);
    }
    limits.check_ceiling(props.len(), g.order())?;
    let cap = limits.cap.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if cap == 0 {
        return Ok(out);
    }
    for_each_partition(g, props, None, limits.node_budget, |p| {
        out.push(p);
        if out.len() >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// JSON shape for partitions on the command line: property names and, per
/// part, its vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub properties: Vec<String>,
    pub parts: Vec<Vec<usize>>,
}

impl PartitionDocument {
    pub fn new(partition: &OrderedPartition, props: &[Property]) -> Self {
        PartitionDocument {
            properties: props.iter().map(|p| p.name().to_string()).collect(),
            parts: partition.parts().into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    pub fn to_partition(&self, order: usize) -> Result<OrderedPartition, SolverError> {
        let listed: usize = self.parts.iter().map(Vec::len).sum();
        if listed != order {
            return Err(SolverError::WrongLength { got: listed, expected: order });
        }
        let parts: Vec<VertexSet> = self.parts.iter().map(|p| p.iter().copied().collect()).collect();
        OrderedPartition::from_parts(order, &parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;
    use crate::graph::named::*;

    fn o() -> Property {
        Property::edgeless()
    }
    fn t() -> Property {
        Property::triangle_free()
    }

    /// Independent oracle: every assignment vector in lexicographic order,
    /// each part checked from scratch.
    fn brute_partitions(g: &Graph, props: &[Property]) -> Vec<Vec<usize>> {
        let n = g.order();
        let k = props.len();
        let total = k.pow(n as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut a = vec![0; n];
            let mut c = code;
            for v in (0..n).rev() {
                a[v] = c % k;
                c /= k;
            }
            let ok = (0..k).all(|i| {
                let part: VertexSet = (0..n).filter(|&v| a[v] == i).collect();
                props[i].satisfies(&g.induced_subgraph(&part).unwrap().0)
            });
            if ok {
                out.push(a);
            }
        }
        out
    }

    #[test]
    fn find_partition_examples() {
        let p = find_partition(&cycle(5), &[o(), t()]).unwrap().unwrap();
        assert!(p.is_valid(&cycle(5), &[o(), t()]));
        assert_eq!(find_partition(&complete(4), &[o(), t()]).unwrap(), None);
        assert!(brute_partitions(&complete(4), &[o(), t()]).is_empty());
        let p = find_partition(&complete(3), &[o(), o(), o()]).unwrap().unwrap();
        assert_eq!(p.assignment(), &[0, 1, 2]);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_partitions(&complete(2), &[o(), o()], None).unwrap().len(), 2);
        assert_eq!(enumerate_partitions(&Graph::empty(2), &[o(), t()], None).unwrap().len(), 4);
        let p4 = enumerate_partitions(&path(4), &[o(), o()], None).unwrap();
        assert_eq!(p4.len(), 2);
        assert_eq!(brute_partitions(&path(4), &[o(), o()]).len(), 2);
    }

    #[test]
    fn ceiling_and_cap() {
        let big = Graph::empty(25);
        assert!(matches!(
            enumerate_partitions(&big, &[o(), o()], None),
            Err(SolverError::CeilingExceeded { .. })
        ));
        assert_eq!(enumerate_partitions(&big, &[o(), o()], Some(5)).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(&big, &[], Some(5)), Err(SolverError::NoProperties));
    }

    #[test]
    fn node_budget_is_enforced() {
        let limits = Limits { cap: Some(10), node_budget: 3, ..Limits::default() };
        assert_eq!(
            enumerate_partitions_with(&cycle(5), &[o(), t()], &limits),
            Err(SolverError::NodeBudget(3))
        );
    }

    #[test]
    fn fixed_vertices_are_respected() {
        let fixed = [Some(1), None, None];
        let p = find_partition_extending(&path(3), &[o(), o()], Some(&fixed)).unwrap().unwrap();
        assert_eq!(p.assignment(), &[1, 0, 1]);
        let bad = [Some(0), Some(0), None];
        assert_eq!(find_partition_extending(&path(3), &[o(), o()], Some(&bad)).unwrap(), None);
    }

    #[test]
    fn solver_matches_brute_force_on_all_small_graphs() {
        let lists = [vec![o(), t()], vec![o(), o()], vec![o(), o(), o()], vec![t(), t()]];
        for g in enumerate_graphs(6).unwrap() {
            for props in &lists {
                if g.order() == 6 && props.len() == 3 {
                    continue;
                }
                let brute = brute_partitions(&g, props);
                let got: Vec<Vec<usize>> = enumerate_partitions(&g, props, None)
                    .unwrap()
                    .into_iter()
                    .map(|p| p.assignment().to_vec())
                    .collect();
                assert_eq!(got, brute, "{g:?}");
                assert_eq!(find_partition(&g, props).unwrap().is_some(), !brute.is_empty());
            }
        }
    }

    #[test]
    fn partitions_are_symmetric_under_equal_properties() {
        for g in enumerate_graphs(5).unwrap() {
            let props = [o(), o(), o()];
            let full = enumerate_partitions(&g, &props, None)
                .unwrap()
                .into_iter()
                .filter(|p| p.parts().iter().all(|s| !s.is_empty()))
                .count();
            assert_eq!(full % 6, 0, "{g:?}");
        }
    }

    #[test]
    fn document_round_trip() {
        let p = find_partition(&cycle(5), &[o(), t()]).unwrap().unwrap();
        let doc = PartitionDocument::new(&p, &[o(), t()]);
        assert_eq!(doc.properties, vec!["O", "T"]);
        assert_eq!(doc.to_partition(5).unwrap(), p);
        assert!(PartitionDocument { properties: vec![], parts: vec![vec![0, 0]] }.to_partition(1).is_err());
    }

    mod random {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph(n: usize) -> impl Strategy<Value = Graph> {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.set_edge(i, j);
                        }
                        k += 1;
                    }
                }
                g
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn eight_vertex_graphs_agree_with_brute_force(g in arb_graph(8)) {
                for props in [vec![o(), t()], vec![o(), o(), o()]] {
                    let found = find_partition(&g, &props).unwrap();
                    let brute = brute_partitions(&g, &props);
                    prop_assert_eq!(found.as_ref().map(|p| p.assignment().to_vec()), brute.first().cloned());
                    if let Some(p) = found {
                        prop_assert!(p.is_valid(&g, &props));
                    }
                }
            }
        }
    }
}
