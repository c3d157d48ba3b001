//! Gadgets for reducing hypergraph colouring to `(P, Q)`-colouring: the
//! forcing attachment, the replicator and the pin cushion.
//!
//! Every gadget is a [`PortedGadget`]: a graph with named port vertices plus
//! bookkeeping for the embedded copies of the forcing graph (`anchors`) and,
//! in a pin cushion, for each replicator copy (`pins`).

pub mod mutants;
mod pincushion;
mod replicator;
mod theorem1;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::GadgetError;
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::partition::{check_strongly_unique, OrderedPartition};
use crate::properties::{Property, PropertyPairParams};

pub use pincushion::{build_pincushion, pincushion_order, shadow_count, verify_pincushion, PinCushionReport};
pub(crate) use pincushion::subsets as subsets_of;
pub use replicator::{build_replicator, verify_replicator, ReplicatorReport};
pub use theorem1::theorem1_transform;

/// Caps applied when a verifier enumerates every colouring of a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyLimits {
    pub max_colourings: usize,
    pub node_budget: u64,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits {
            max_colourings: 1 << 16,
            node_budget: 1 << 32,
        }
    }
}

/// A strongly uniquely `(P, Q)`-partitionable graph with its partition
/// `(U_P, U_Q)` and the anchors `p ∈ U_P`, `q ∈ U_Q`.
///
/// A vertex joined to exactly `N(p) ∩ U_Q` inside a copy of `g_pq` lands in
/// the part containing `p` in every colouring; likewise for `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingAnchors {
    pub g_pq: Graph,
    pub u_p: VertexSet,
    pub u_q: VertexSet,
    pub p_vertex: usize,
    pub q_vertex: usize,
    pub force_to_p: VertexSet,
    pub force_to_q: VertexSet,
}

impl ForcingAnchors {
    /// Checks `g_pq` for strong uniqueness and takes the least vertex of each
    /// part as anchor.
    pub fn new(p: &Property, q: &Property, g_pq: Graph, partition: &OrderedPartition) -> Result<Self, GadgetError> {
        let props = [p.clone(), q.clone()];
        if partition.n_parts() != 2 || !partition.is_valid(&g_pq, &props) {
            return Err(GadgetError::InvalidFixturePartition);
        }
        if !check_strongly_unique(&g_pq, &props)?.is_strongly_unique {
            return Err(GadgetError::NotStronglyUnique);
        }
        let u_p = partition.part(0);
        let u_q = partition.part(1);
        let p_vertex = *u_p.iter().next().ok_or(GadgetError::EmptyAnchorPart("P"))?;
        let q_vertex = *u_q.iter().next().ok_or(GadgetError::EmptyAnchorPart("Q"))?;
        let force_to_p = g_pq.neighbourhood(p_vertex).intersection(&u_q).copied().collect();
        let force_to_q = g_pq.neighbourhood(q_vertex).intersection(&u_p).copied().collect();
        Ok(ForcingAnchors {
            g_pq,
            u_p,
            u_q,
            p_vertex,
            q_vertex,
            force_to_p,
            force_to_q,
        })
    }

    /// Searches graphs on at most `max_n` vertices for a fixture.
    pub fn search(p: &Property, q: &Property, max_n: usize) -> Result<Option<Self>, GadgetError> {
        let props = [p.clone(), q.clone()];
        match crate::partition::search_unique(&props, max_n, true)? {
            Some((g, partition)) => match Self::new(p, q, g, &partition) {
                Ok(a) => Ok(Some(a)),
                Err(GadgetError::EmptyAnchorPart(_)) => Ok(None),
                Err(e) => Err(e),
            },
            None => Ok(None),
        }
    }

    pub fn partition(&self) -> OrderedPartition {
        OrderedPartition::from_parts(self.g_pq.order(), &[self.u_p.clone(), self.u_q.clone()])
            .expect("anchor parts partition the fixture")
    }
}

/// Where a copy of the forcing graph sits inside a larger graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedAnchors {
    /// Host index of each fixture vertex.
    pub vertices: Vec<usize>,
    pub p_vertex: usize,
    pub q_vertex: usize,
}

impl EmbeddedAnchors {
    fn remap(&self, map: &[usize]) -> Self {
        EmbeddedAnchors {
            vertices: self.vertices.iter().map(|&v| map[v]).collect(),
            p_vertex: map[self.p_vertex],
            q_vertex: map[self.q_vertex],
        }
    }

    fn filter_map(&self, map: &[Option<usize>]) -> Option<Self> {
        Some(EmbeddedAnchors {
            vertices: self.vertices.iter().filter_map(|&v| map[v]).collect(),
            p_vertex: map[self.p_vertex]?,
            q_vertex: map[self.q_vertex]?,
        })
    }
}

/// One replicator copy inside a pin cushion, tying `S[s_index]` to a shadow
/// vertex of a copy of `H_P` or `H_Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pin {
    pub s_index: usize,
    pub shadow: usize,
    /// Replicator vertices other than its `x` and `x'` ports.
    pub interior: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortedGadget {
    pub graph: Graph,
    pub ports: BTreeMap<String, usize>,
    #[serde(default)]
    pub anchors: Vec<EmbeddedAnchors>,
    #[serde(default)]
    pub pins: Vec<Pin>,
}

impl From<Graph> for PortedGadget {
    fn from(graph: Graph) -> Self {
        PortedGadget {
            graph,
            ports: BTreeMap::new(),
            anchors: Vec::new(),
            pins: Vec::new(),
        }
    }
}

impl PortedGadget {
    pub fn port(&self, name: &str) -> Result<usize, GadgetError> {
        self.ports.get(name).copied().ok_or_else(|| GadgetError::MissingPort(name.to_string()))
    }

    /// Index of the part playing the role of `P` in `colouring`: the part of
    /// the first anchor's `p` vertex, or part 0 when there are no anchors.
    pub fn p_part(&self, colouring: &OrderedPartition) -> usize {
        self.anchors.first().map_or(0, |a| colouring.part_of(a.p_vertex))
    }

    /// Copies this gadget into `builder`, identifying the named ports with
    /// existing builder vertices. Returns the vertex map and the copied
    /// anchors and pins.
    pub fn embed_into(
        &self,
        builder: &mut GraphBuilder,
        bindings: &[(&str, usize)],
    ) -> Result<(Vec<usize>, Vec<EmbeddedAnchors>, Vec<Pin>), GadgetError> {
        let mut bind = vec![None; self.graph.order()];
        for &(name, target) in bindings {
            bind[self.port(name)?] = Some(target);
        }
        let map = builder.embed(&self.graph, &bind).map_err(|e| match e {
            crate::GraphError::SelfLoop(v) => GadgetError::WouldCreateLoop(v, v),
            other => GadgetError::Graph(other),
        })?;
        let anchors = self.anchors.iter().map(|a| a.remap(&map)).collect();
        let pins = self
            .pins
            .iter()
            .map(|p| Pin {
                s_index: p.s_index,
                shadow: map[p.shadow],
                interior: p.interior.iter().map(|&v| map[v]).collect(),
            })
            .collect();
        Ok((map, anchors, pins))
    }

    /// Edges with exactly one end inside an embedded copy of the forcing
    /// graph.
    pub fn forcing_edges(&self) -> Vec<(usize, usize)> {
        let mut inside = vec![false; self.graph.order()];
        for a in &self.anchors {
            for &v in &a.vertices {
                inside[v] = true;
            }
        }
        self.graph.edges().filter(|&(u, v)| inside[u] != inside[v]).collect()
    }

    pub fn without_edges(&self, edges: &[(usize, usize)]) -> PortedGadget {
        let mut out = self.clone();
        for &(u, v) in edges {
            out.graph.remove_edge(u, v);
        }
        out
    }

    /// Deletes vertices, dropping ports, pins and anchor copies that lose a
    /// distinguished vertex.
    pub fn without_vertices(&self, gone: &VertexSet) -> Result<PortedGadget, GadgetError> {
        let (graph, map) = self.graph.remove_vertices(gone)?;
        let ports = self
            .ports
            .iter()
            .filter_map(|(k, &v)| map[v].map(|w| (k.clone(), w)))
            .collect();
        let anchors = self.anchors.iter().filter_map(|a| a.filter_map(&map)).collect();
        let pins = self
            .pins
            .iter()
            .filter_map(|p| {
                Some(Pin {
                    s_index: p.s_index,
                    shadow: map[p.shadow]?,
                    interior: p.interior.iter().filter_map(|&v| map[v]).collect(),
                })
            })
            .collect();
        Ok(PortedGadget { graph, ports, anchors, pins })
    }
}

/// Adds a fresh copy of the forcing graph to `host` and joins every vertex
/// of `to_p` to the copy's `N(p) ∩ U_Q` and every vertex of `to_q` to its
/// `N(q) ∩ U_P`. Host vertices keep their indices; the copy follows them.
pub fn force_vertices(
    host: &Graph,
    anchors: &ForcingAnchors,
    to_p: &VertexSet,
    to_q: &VertexSet,
) -> Result<(Graph, EmbeddedAnchors), GadgetError> {
    if let Some(&v) = to_p.intersection(to_q).next() {
        return Err(GadgetError::ConflictingForce(v));
    }
    for &v in to_p.iter().chain(to_q) {
        if v >= host.order() {
            return Err(crate::GraphError::VertexOutOfRange { vertex: v, order: host.order() }.into());
        }
    }
    let mut b = GraphBuilder::from_graph(host);
    let map = b.embed(&anchors.g_pq, &vec![None; anchors.g_pq.order()])?;
    for &v in to_p {
        for &w in &anchors.force_to_p {
            b.add_edge(v, map[w])?;
        }
    }
    for &v in to_q {
        for &w in &anchors.force_to_q {
            b.add_edge(v, map[w])?;
        }
    }
    let embedded = EmbeddedAnchors {
        p_vertex: map[anchors.p_vertex],
        q_vertex: map[anchors.q_vertex],
        vertices: map,
    };
    Ok((b.build(), embedded))
}

/// Result of [`identify_ports`]: the composite (with the host's ports,
/// anchors and pins followed by the attached gadget's) and the map from the
/// attached gadget's vertices into it.
#[derive(Debug, Clone)]
pub struct Attachment {
    pub gadget: PortedGadget,
    pub map: Vec<usize>,
}

impl Attachment {
    /// Where a port of the attached gadget ended up.
    pub fn port(&self, attached: &PortedGadget, name: &str) -> Result<usize, GadgetError> {
        Ok(self.map[attached.port(name)?])
    }
}

/// Glues `attach` onto `host` by identifying the port `port` of `attach` with
/// `host_vertex`. Neighbourhoods are merged; host vertices keep their
/// indices and the other vertices of `attach` are appended in order.
pub fn identify_ports(
    attach: &PortedGadget,
    port: &str,
    host: &PortedGadget,
    host_vertex: usize,
) -> Result<Attachment, GadgetError> {
    let mut b = GraphBuilder::from_graph(&host.graph);
    if host_vertex >= b.order() {
        return Err(crate::GraphError::VertexOutOfRange { vertex: host_vertex, order: b.order() }.into());
    }
    let (map, anchors, pins) = attach.embed_into(&mut b, &[(port, host_vertex)])?;
    let mut gadget = host.clone();
    gadget.graph = b.build();
    gadget.anchors.extend(anchors);
    gadget.pins.extend(pins);
    Ok(Attachment { gadget, map })
}

/// Identifies two vertices of one gadget. `keep` survives; `merge` is
/// deleted after handing its neighbours to `keep`. Fails if they are
/// adjacent.
pub fn identify_within(g: &PortedGadget, keep: usize, merge: usize) -> Result<PortedGadget, GadgetError> {
    if g.graph.has_edge(keep, merge) {
        return Err(GadgetError::WouldCreateLoop(keep, merge));
    }
    let mut out = g.clone();
    let moved: Vec<usize> = g.graph.neighbours(merge).collect();
    for w in moved {
        out.graph.add_edge(keep, w)?;
    }
    for v in out.ports.values_mut() {
        if *v == merge {
            *v = keep;
        }
    }
    for p in &mut out.pins {
        if p.shadow == merge {
            p.shadow = keep;
        }
    }
    out.without_vertices(&VertexSet::from([merge]))
}

/// The gadgets for one property pair, built once and reused by the
/// reduction.
#[derive(Debug, Clone)]
pub struct GadgetSet {
    pub p: Property,
    pub q: Property,
    pub params: PropertyPairParams,
    pub anchors: ForcingAnchors,
    pub replicator: PortedGadget,
    pub cushion: PortedGadget,
    pub replicator_report: Option<ReplicatorReport>,
    pub cushion_report: Option<PinCushionReport>,
}

impl GadgetSet {
    /// Builds the replicator and pin cushion. With `verify` limits, both
    /// are checked by exhaustive enumeration and a failed check is an error;
    /// without them the reports stay empty and the set counts as unverified.
    pub fn build(p: &Property, q: &Property, anchors: ForcingAnchors, verify: Option<&VerifyLimits>) -> Result<Self, GadgetError> {
        let params = PropertyPairParams::new(p, q);
        let replicator = build_replicator(p, q, &anchors)?;
        let replicator_report = match verify {
            Some(limits) => {
                let r = verify_replicator(&replicator, p, q, limits)?;
                if !r.holds() {
                    return Err(GadgetError::VerificationFailed(format!("replicator: {r:?}")));
                }
                Some(r)
            }
            None => None,
        };
        let cushion = build_pincushion(p, q, &params, &replicator)?;
        let cushion_report = match verify {
            Some(limits) => {
                let r = verify_pincushion(&cushion, p, q, &params, limits)?;
                if !r.holds() {
                    return Err(GadgetError::VerificationFailed(format!("pin cushion: {r:?}")));
                }
                Some(r)
            }
            None => None,
        };
        Ok(GadgetSet {
            p: p.clone(),
            q: q.clone(),
            params,
            anchors,
            replicator,
            cushion,
            replicator_report,
            cushion_report,
        })
    }

    pub fn is_verified(&self) -> bool {
        self.replicator_report.is_some() && self.cushion_report.is_some()
    }

    pub fn props(&self) -> [Property; 2] {
        [self.p.clone(), self.q.clone()]
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The `(O, T)` forcing fixture found by searching graphs on at most six
    /// vertices: the 5-wheel with its hub in the edgeless part.
    pub fn o_t_anchors() -> ForcingAnchors {
        ForcingAnchors::search(&Property::edgeless(), &Property::triangle_free(), 6)
            .unwrap()
            .expect("a fixture exists on six vertices")
    }
}
