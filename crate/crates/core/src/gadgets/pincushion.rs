use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{PortedGadget, VerifyLimits};
use crate::error::{GadgetError, SolverError};
use crate::graph::{Graph, GraphBuilder};
use crate::partition::for_each_partition;
use crate::properties::{Property, PropertyPairParams};

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Shadow vertices per port: `C(p+q-1, p) + C(p+q-1, q)`.
pub fn shadow_count(p_count: usize, q_count: usize) -> usize {
    let r = p_count + q_count;
    binomial(r.saturating_sub(1), p_count) + binomial(r.saturating_sub(1), q_count)
}

/// Order of the pin cushion built from a replicator on `replicator_order`
/// vertices.
pub fn pincushion_order(params: &PropertyPairParams, replicator_order: usize) -> usize {
    let r = params.r();
    let pins = r * shadow_count(params.p_count, params.q_count);
    r + pins + pins * (replicator_order - 2)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Builds the pin cushion: an independent set `S` of `p + q` ports, a copy
/// of `H_P` for every `(p+1)`-subset of `S` and of `H_Q` for every
/// `(q+1)`-subset, each copy vertex tied to its port by a replicator
/// (`x` on the port, `x'` on the copy vertex).
///
/// Vertices `0..r` are `S`; each graph copy is followed by its replicators.
pub fn build_pincushion(
    _p: &Property,
    _q: &Property,
    params: &PropertyPairParams,
    replicator: &PortedGadget,
) -> Result<PortedGadget, GadgetError> {
    let r = params.r();
    if r < 3 {
        return Err(GadgetError::DegeneratePair { p: params.p_count, q: params.q_count });
    }
    let mut b = GraphBuilder::new();
    let s = b.add_vertices(r);
    let mut out = PortedGadget::from(Graph::empty(0));
    out.ports = s.clone().map(|i| (format!("S[{i}]"), i)).collect();
    for (h, size) in [(&params.h_p, params.p_count + 1), (&params.h_q, params.q_count + 1)] {
        for subset in subsets(r, size) {
            let shadows = b.embed(h, &vec![None; h.order()])?;
            for (&si, &shadow) in subset.iter().zip(&shadows) {
                let before = b.order();
                let (_, anchors, _) = replicator.embed_into(&mut b, &[("x", si), ("x'", shadow)])?;
                out.anchors.extend(anchors);
                out.pins.push(super::Pin {
                    s_index: si,
                    shadow,
                    interior: (before..b.order()).collect(),
                });
            }
        }
    }
    out.graph = b.build();
    Ok(out)
}

/// Outcome of exhaustively colouring a pin cushion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinCushionReport {
    pub colourings: usize,
    /// Sets of `S` indices found in the `P`-part, over all colourings.
    pub patterns: BTreeSet<Vec<usize>>,
    /// Achieved patterns whose size is not `p`.
    pub wrong_size: Vec<Vec<usize>>,
    /// `p`-subsets of `S` achieved by no colouring.
    pub missing: Vec<Vec<usize>>,
    /// Patterns achieved by more than one colouring. With every replicator
    /// copying its port uniquely, a pattern fixes the whole colouring.
    pub ambiguous: Vec<Vec<usize>>,
}

impl PinCushionReport {
    pub fn holds(&self) -> bool {
        self.wrong_size.is_empty() && self.missing.is_empty() && self.ambiguous.is_empty()
    }
}

/// Enumerates every `(P, Q)`-colouring of the cushion and collects which
/// subsets of `S` land in the `P`-part.
pub fn verify_pincushion(
    n: &PortedGadget,
    p: &Property,
    q: &Property,
    params: &PropertyPairParams,
    limits: &VerifyLimits,
) -> Result<PinCushionReport, GadgetError> {
    let r = params.r();
    let s: Vec<usize> = (0..r).map(|i| n.port(&format!("S[{i}]"))).collect::<Result<_, _>>()?;
    let props = [p.clone(), q.clone()];
    let mut patterns = BTreeMap::new();
    let mut colourings = 0;
    let mut over = false;
    for_each_partition(&n.graph, &props, None, limits.node_budget, |c| {
        colourings += 1;
        if colourings > limits.max_colourings {
            over = true;
            return ControlFlow::Break(());
        }
        let pp = n.p_part(&c);
        *patterns.entry((0..r).filter(|&i| c.part_of(s[i]) == pp).collect::<Vec<_>>()).or_insert(0usize) += 1;
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(SolverError::CapReached(limits.max_colourings).into());
    }
    let wrong_size = patterns.keys().filter(|w| w.len() != params.p_count).cloned().collect();
    let missing = subsets(r, params.p_count)
        .into_iter()
        .filter(|w| !patterns.contains_key(w))
        .collect();
    let ambiguous = patterns.iter().filter(|&(_, &k)| k > 1).map(|(w, _)| w.clone()).collect();
    Ok(PinCushionReport {
        colourings,
        patterns: patterns.into_keys().collect(),
        wrong_size,
        missing,
        ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::o_t_anchors;
    use super::super::build_replicator;
    use super::*;
    use crate::graph::VertexSet;

    fn ot() -> (Property, Property, PropertyPairParams) {
        let (o, t) = (Property::edgeless(), Property::triangle_free());
        let params = PropertyPairParams::new(&o, &t);
        (o, t, params)
    }

    fn replicator() -> PortedGadget {
        let (o, t, _) = ot();
        build_replicator(&o, &t, &o_t_anchors()).unwrap()
    }

    fn cushion() -> PortedGadget {
        let (o, t, params) = ot();
        build_pincushion(&o, &t, &params, &replicator()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 2), [vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(3, 0), [Vec::<usize>::new()]);
    }

    #[test]
    fn shadow_formula() {
        assert_eq!(shadow_count(1, 2), 3);
        assert_eq!(shadow_count(2, 2), 6);
    }

    #[test]
    fn structure_for_edgeless_and_triangle_free() {
        let n = cushion();
        assert_eq!(n.ports.len(), 3);
        assert!(n.graph.is_independent(&VertexSet::from([0, 1, 2])));
        assert_eq!(n.pins.len(), 9);
        for i in 0..3 {
            assert_eq!(n.pins.iter().filter(|p| p.s_index == i).count(), 3);
        }
        // three K2 shadow copies and one K3
        let shadow_edges = n
            .graph
            .edges()
            .filter(|&(u, v)| n.pins.iter().any(|p| p.shadow == u) && n.pins.iter().any(|p| p.shadow == v))
            .count();
        assert_eq!(shadow_edges, 3 + 3);
        let (_, _, params) = ot();
        assert_eq!(n.graph.order(), 93);
        assert_eq!(pincushion_order(&params, 11), 93);
    }

    #[test]
    fn degenerate_pair_rejected() {
        let o = Property::edgeless();
        let params = PropertyPairParams::new(&o, &o);
        assert_eq!(
            build_pincushion(&o, &o, &params, &replicator()).unwrap_err(),
            GadgetError::DegeneratePair { p: 1, q: 1 }
        );
    }

    #[test]
    fn cushion_contract_holds() {
        let (o, t, params) = ot();
        let rep = verify_pincushion(&cushion(), &o, &t, &params, &VerifyLimits::default()).unwrap();
        assert!(rep.holds(), "{rep:?}");
        let singles: BTreeSet<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
        assert_eq!(rep.patterns, singles);
        // every replicator admits one colouring per colour of its port
        assert_eq!(rep.colourings, 3);
    }

    #[test]
    fn deterministic() {
        assert_eq!(cushion(), cushion());
    }
}
