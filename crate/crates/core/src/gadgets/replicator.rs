use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{force_vertices, ForcingAnchors, PortedGadget, VerifyLimits};
use crate::error::{GadgetError, SolverError};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::partition::{for_each_partition, OrderedPartition};
use crate::properties::{EndBlockChoice, Property};

/// `F'`: the forbidden graph with a second copy of its end-block hung on the
/// same vertex `y`. Returns the graph and the indices of `x`, `y`, `x'`.
fn doubled_end_block(c: &EndBlockChoice) -> Result<(Graph, [usize; 3]), GadgetError> {
    let mut b = GraphBuilder::from_graph(&c.f);
    let mut copy = BTreeMap::new();
    for &v in &c.block {
        let w = if v == c.y { v } else { b.add_vertex() };
        copy.insert(v, w);
    }
    for (u, v) in c.f.edges() {
        if let (Some(&a), Some(&w)) = (copy.get(&u), copy.get(&v)) {
            b.add_edge(a, w)?;
        }
    }
    Ok((b.build(), [c.x, c.y, copy[&c.x]]))
}

/// Builds the replicator: `F'_P` and `F'_Q` glued along `x`, `y`, `x'`, with
/// the rest of `F'_P` forced into the `P`-part and the rest of `F'_Q` into
/// the `Q`-part.
///
/// Vertices 0, 1, 2 are `x`, `y`, `x'`; then come the other vertices of
/// `F'_P`, then those of `F'_Q`, then the copy of the forcing fixture.
pub fn build_replicator(p: &Property, q: &Property, anchors: &ForcingAnchors) -> Result<PortedGadget, GadgetError> {
    let mut b = GraphBuilder::new();
    let ports = b.add_vertices(3);
    let mut forced = [VertexSet::new(), VertexSet::new()];
    for (prop, set) in [p, q].into_iter().zip(forced.iter_mut()) {
        let (f, [x, y, x2]) = doubled_end_block(&prop.minimal_end_block()?)?;
        let mut bind = vec![None; f.order()];
        bind[x] = Some(0);
        bind[y] = Some(1);
        bind[x2] = Some(2);
        let before = b.order();
        let map = b.embed(&f, &bind)?;
        set.extend(map.into_iter().filter(|&v| v >= before));
    }
    let [to_p, to_q] = forced;
    let (graph, emb) = force_vertices(&b.build(), anchors, &to_p, &to_q)?;
    let names = ["x", "y", "x'"];
    Ok(PortedGadget {
        graph,
        ports: names.iter().map(|s| s.to_string()).zip(ports).collect(),
        anchors: vec![emb],
        pins: Vec::new(),
    })
}

/// Outcome of exhaustively colouring a replicator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicatorReport {
    pub colourings: usize,
    /// Colourings where `x` and `x'` share a part and `y` is in the other.
    pub copying: usize,
    pub x_in_p: usize,
    pub x_in_q: usize,
    /// Up to four colourings breaking the copying rule.
    pub counterexamples: Vec<OrderedPartition>,
}

impl ReplicatorReport {
    pub fn copies_always(&self) -> bool {
        self.copying == self.colourings
    }

    pub fn holds(&self) -> bool {
        self.copies_always() && self.x_in_p == 1 && self.x_in_q == 1
    }
}

/// Enumerates every `(P, Q)`-colouring of `r` and checks that `x` and `x'`
/// always share a part distinct from `y`'s, and that exactly one colouring
/// puts `x` in each part. The `P`-part is the part holding the anchor `p`.
pub fn verify_replicator(
    r: &PortedGadget,
    p: &Property,
    q: &Property,
    limits: &VerifyLimits,
) -> Result<ReplicatorReport, GadgetError> {
    let (x, y, x2) = (r.port("x")?, r.port("y")?, r.port("x'")?);
    let props = [p.clone(), q.clone()];
    let mut report = ReplicatorReport {
        colourings: 0,
        copying: 0,
        x_in_p: 0,
        x_in_q: 0,
        counterexamples: Vec::new(),
    };
    let mut over = false;
    for_each_partition(&r.graph, &props, None, limits.node_budget, |c| {
        report.colourings += 1;
        if report.colourings > limits.max_colourings {
            over = true;
            return ControlFlow::Break(());
        }
        let pp = r.p_part(&c);
        if c.part_of(x) == c.part_of(x2) && c.part_of(x) != c.part_of(y) {
            report.copying += 1;
        } else if report.counterexamples.len() < 4 {
            report.counterexamples.push(c.clone());
        }
        if c.part_of(x) == pp {
            report.x_in_p += 1;
        } else {
            report.x_in_q += 1;
        }
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(SolverError::CapReached(limits.max_colourings).into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::o_t_anchors;
    use super::*;
    use crate::graph::{are_isomorphic, named::*};

    fn ot() -> (Property, Property) {
        (Property::edgeless(), Property::triangle_free())
    }

    fn built() -> PortedGadget {
        let (o, t) = ot();
        build_replicator(&o, &t, &o_t_anchors()).unwrap()
    }

    #[test]
    fn doubled_blocks_for_edgeless_and_triangle_free() {
        let (o, t) = ot();
        let (fp, ports) = doubled_end_block(&o.minimal_end_block().unwrap()).unwrap();
        assert_eq!(fp, path(3).permute(&[1, 0, 2]));
        assert_eq!(ports, [1, 0, 2]);
        let (fq, [x, y, x2]) = doubled_end_block(&t.minimal_end_block().unwrap()).unwrap();
        assert!(are_isomorphic(&fq, &bowtie()));
        assert_eq!(fq.degree(y), 4);
        assert!(fq.has_edge(x, y) && fq.has_edge(x2, y) && !fq.has_edge(x, x2));
    }

    #[test]
    fn matches_hand_assembled_replicator() {
        let r = built();
        let a = o_t_anchors();
        // x, y, x' then the two triangle apexes, then the wheel
        let mut expected = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 3), (1, 3), (2, 4), (1, 4)]).unwrap();
        expected = expected.disjoint_union(&a.g_pq);
        for apex in [3, 4] {
            for &w in &a.force_to_q {
                expected.add_edge(apex, 5 + w).unwrap();
            }
        }
        assert_eq!(r.graph, expected);
        assert_eq!(r.graph.order(), 11);
        let ports: Vec<usize> = ["x", "y", "x'"].iter().map(|n| r.port(n).unwrap()).collect();
        assert_eq!(ports, [0, 1, 2]);
    }

    #[test]
    fn two_vertices_forced_to_the_triangle_free_part() {
        let r = built();
        let a = o_t_anchors();
        let forced_q: Vec<usize> = (0..5).filter(|&v| a.force_to_q.iter().all(|&w| r.graph.has_edge(v, 5 + w))).collect();
        assert_eq!(forced_q, [3, 4]);
    }

    #[test]
    fn replicator_contract_holds() {
        let (o, t) = ot();
        let rep = verify_replicator(&built(), &o, &t, &VerifyLimits::default()).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.colourings, 2);
    }

    #[test]
    fn deterministic() {
        assert_eq!(built(), built());
    }

    #[test]
    fn verification_cap_is_an_error() {
        let (o, t) = ot();
        let limits = VerifyLimits { max_colourings: 1, ..VerifyLimits::default() };
        assert!(matches!(
            verify_replicator(&built(), &o, &t, &limits),
            Err(GadgetError::Solver(SolverError::CapReached(1)))
        ));
    }
}
