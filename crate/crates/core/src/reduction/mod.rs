//! From `p`-in-`r` hypergraph colouring to `(P, Q)`-colouring: one pin
//! cushion per hyperedge, with the cushion ports identified with the
//! hypergraph vertices.

mod hypergraph;

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ReductionError, SolverError};
use crate::gadgets::GadgetSet;
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::partition::{find_partition, find_partition_extending, OrderedPartition};
use crate::properties::Property;

pub use hypergraph::{brute_pinr, enumerate_hypergraphs, parse_hypergraph, Hypergraph, BRUTE_FORCE_BOUND};

/// Bookkeeping that ties a reduced graph back to its hypergraph.
///
/// Hypergraph vertex `v` is graph vertex `v` in every cushion it belongs
/// to, so `port_map[e][i] == hypergraph.edges[e][i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificateMap {
    pub hypergraph: Hypergraph,
    /// Graph vertex realising each position of each edge.
    pub port_map: Vec<Vec<usize>>,
    /// Vertices added for each edge's cushion (everything except `S`).
    pub cushion_regions: Vec<Range<usize>>,
    /// `(shadow vertex, hypergraph vertex it copies)` for each cushion.
    pub shadows: Vec<Vec<(usize, usize)>>,
    /// A vertex that lies in the `P`-part of every colouring, when the graph
    /// has any cushion.
    pub p_anchor: Option<usize>,
    /// Whether the gadgets were verified before the reduction was built.
    pub verified: bool,
}

impl ReductionCertificateMap {
    /// The part playing `P` in `colouring`.
    pub fn p_part(&self, colouring: &OrderedPartition) -> usize {
        self.p_anchor.map_or(0, |v| colouring.part_of(v))
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    pub map: ReductionCertificateMap,
}

/// `n + m·(|N| − r)` for a cushion `N` on `cushion_order` vertices.
pub fn reduced_order(h: &Hypergraph, cushion_order: usize) -> usize {
    h.n_vertices + h.edges.len() * (cushion_order - h.r)
}

fn check_arity(h: &Hypergraph, gadgets: &GadgetSet) -> Result<(), ReductionError> {
    let expected_r = gadgets.params.r();
    let expected_p = gadgets.params.p_count;
    if h.r != expected_r || h.p_target != expected_p {
        return Err(ReductionError::ArityMismatch { r: h.r, p: h.p_target, expected_r, expected_p });
    }
    Ok(())
}

/// Sticks a copy of the pin cushion onto every hyperedge. Graph vertices
/// `0..n` are the hypergraph vertices; each cushion's other vertices follow
/// in edge order.
pub fn reduce(h: &Hypergraph, gadgets: &GadgetSet) -> Result<Reduction, ReductionError> {
    check_arity(h, gadgets)?;
    let cushion = &gadgets.cushion;
    let names: Vec<String> = (0..h.r).map(|i| format!("S[{i}]")).collect();
    let mut b = GraphBuilder::new();
    b.add_vertices(h.n_vertices);
    let mut port_map = Vec::with_capacity(h.edges.len());
    let mut regions = Vec::with_capacity(h.edges.len());
    let mut shadows = Vec::with_capacity(h.edges.len());
    let mut p_anchor = None;
    for e in &h.edges {
        let bindings: Vec<(&str, usize)> = names.iter().map(String::as_str).zip(e.iter().copied()).collect();
        let start = b.order();
        let (map, anchors, pins) = cushion.embed_into(&mut b, &bindings)?;
        port_map.push(names.iter().map(|n| map[cushion.ports[n]]).collect());
        regions.push(start..b.order());
        shadows.push(pins.iter().map(|p| (p.shadow, e[p.s_index])).collect());
        if p_anchor.is_none() {
            p_anchor = anchors.first().map(|a| a.p_vertex);
        }
    }
    Ok(Reduction {
        graph: b.build(),
        map: ReductionCertificateMap {
            hypergraph: h.clone(),
            port_map,
            cushion_regions: regions,
            shadows,
            p_anchor,
            verified: gadgets.is_verified(),
        },
    })
}

/// Reads `U` off a colouring of the reduced graph: the hypergraph vertices
/// in the `P`-part. The colouring is checked first and `U` is checked
/// against every edge afterwards.
pub fn lift_certificate(
    map: &ReductionCertificateMap,
    graph: &Graph,
    props: &[Property],
    colouring: &OrderedPartition,
) -> Result<VertexSet, ReductionError> {
    if colouring.assignment().len() != graph.order() {
        return Err(SolverError::WrongLength { got: colouring.assignment().len(), expected: graph.order() }.into());
    }
    colouring
        .validate(graph, props)
        .map_err(|(part, w)| ReductionError::InvalidColouring { part, witness: w.into_iter().collect() })?;
    let h = &map.hypergraph;
    let pp = map.p_part(colouring);
    let u: VertexSet = (0..h.n_vertices).filter(|&v| colouring.part_of(v) == pp).collect();
    if let Some((edge, count)) = h.first_violation(&u) {
        return Err(ReductionError::CertificateViolation {
            edge,
            vertices: h.edges[edge].clone(),
            count,
            expected: h.p_target,
        });
    }
    Ok(u)
}

/// Pushes a certificate `U` forward: hypergraph vertices and their shadows
/// go to the `P`-part (part 0) when in `U` and to part 1 otherwise; the
/// solver completes the replicators.
pub fn encode_certificate(
    map: &ReductionCertificateMap,
    graph: &Graph,
    props: &[Property],
    u: &VertexSet,
) -> Result<OrderedPartition, ReductionError> {
    let h = &map.hypergraph;
    if let Some((edge, count)) = h.first_violation(u) {
        return Err(ReductionError::CertificateViolation {
            edge,
            vertices: h.edges[edge].clone(),
            count,
            expected: h.p_target,
        });
    }
    let side = |v: usize| if u.contains(&v) { 0 } else { 1 };
    let mut fixed = vec![None; graph.order()];
    for v in 0..h.n_vertices {
        fixed[v] = Some(side(v));
    }
    for &(shadow, v) in map.shadows.iter().flatten() {
        fixed[shadow] = Some(side(v));
    }
    if let Some(p) = map.p_anchor {
        fixed[p] = Some(0);
    }
    find_partition_extending(graph, props, Some(&fixed))?.ok_or(ReductionError::EncodingFailed)
}

/// Both sides of the reduction on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub hypergraph: Hypergraph,
    pub reduced_order: usize,
    pub brute_force: Option<VertexSet>,
    pub colourable: bool,
    /// `U` read off the solver's colouring.
    pub lifted: Option<VertexSet>,
    /// The brute-force certificate survived encoding and lifting unchanged.
    pub round_trip: Option<bool>,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.brute_force.is_some() == self.colourable
            && self.lifted.is_some() == self.colourable
            && self.round_trip.unwrap_or(true)
    }
}

/// Decides `h` by brute force and its reduction by the solver, lifts the
/// solver's colouring, and round-trips the brute-force certificate.
pub fn equivalence_check(h: &Hypergraph, gadgets: &GadgetSet) -> Result<EquivalenceReport, ReductionError> {
    let brute = brute_pinr(h)?;
    let red = reduce(h, gadgets)?;
    let props = gadgets.props();
    let colouring = find_partition(&red.graph, &props)?;
    let lifted = colouring
        .as_ref()
        .map(|c| lift_certificate(&red.map, &red.graph, &props, c))
        .transpose()?;
    let round_trip = brute
        .as_ref()
        .map(|u| -> Result<bool, ReductionError> {
            let c = encode_certificate(&red.map, &red.graph, &props, u)?;
            Ok(lift_certificate(&red.map, &red.graph, &props, &c)? == *u)
        })
        .transpose()?;
    Ok(EquivalenceReport {
        hypergraph: h.clone(),
        reduced_order: red.graph.order(),
        brute_force: brute,
        colourable: colouring.is_some(),
        lifted,
        round_trip,
    })
}

/// Runs [`equivalence_check`] on every instance, in parallel. Reports come
/// back in input order.
pub fn sweep(instances: &[Hypergraph], gadgets: &GadgetSet) -> Result<Vec<EquivalenceReport>, ReductionError> {
    instances.par_iter().map(|h| equivalence_check(h, gadgets)).collect()
}
