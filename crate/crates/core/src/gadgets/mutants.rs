//! Deliberately broken gadgets. Each should fail its verifier; a verifier
//! that accepts one of these is not checking what it claims to.

use super::PortedGadget;
use crate::error::GadgetError;
use crate::graph::VertexSet;
use crate::properties::PropertyPairParams;

#[derive(Debug, Clone)]
pub struct Mutant {
    pub name: String,
    pub gadget: PortedGadget,
}

fn anchor_vertices(g: &PortedGadget) -> VertexSet {
    g.anchors.iter().flat_map(|a| a.vertices.iter().copied()).collect()
}

/// Replicator mutants: the forcing edges of each forced vertex in turn, all
/// forcing edges at once, the duplicated block at `x'`, and the edge `yx'`.
pub fn replicator_mutants(r: &PortedGadget) -> Result<Vec<Mutant>, GadgetError> {
    let (x, y, x2) = (r.port("x")?, r.port("y")?, r.port("x'")?);
    let forcing = r.forcing_edges();
    let inside = anchor_vertices(r);
    let forced: VertexSet = forcing.iter().flat_map(|&(u, v)| [u, v]).filter(|v| !inside.contains(v)).collect();
    let mut out = Vec::new();
    for &v in &forced {
        let edges: Vec<_> = forcing.iter().copied().filter(|&(a, b)| a == v || b == v).collect();
        out.push(Mutant {
            name: format!("forcing edges of vertex {v} deleted"),
            gadget: r.without_edges(&edges),
        });
    }
    out.push(Mutant {
        name: "all forcing edges deleted".into(),
        gadget: r.without_edges(&forcing),
    });
    let block: VertexSet = forced
        .iter()
        .copied()
        .filter(|&v| r.graph.has_edge(v, x2) && !r.graph.has_edge(v, x))
        .collect();
    if !block.is_empty() {
        out.push(Mutant {
            name: "duplicated block at x' removed".into(),
            gadget: r.without_vertices(&block)?,
        });
    }
    out.push(Mutant {
        name: "edge y-x' deleted".into(),
        gadget: r.without_edges(&[(y, x2)]),
    });
    Ok(out)
}

/// Pin cushion mutants: the last `H_Q` copy with its pins, each pin's
/// replicator in turn, one edge of the last `H_Q` copy, and the forcing
/// edges of each pin in turn.
///
/// An edge of an `H_P` copy is not on the list: for `(O, T)` the `K3` copy
/// already rules out two ports in `O`, so that deletion changes nothing.
pub fn pincushion_mutants(n: &PortedGadget, params: &PropertyPairParams) -> Result<Vec<Mutant>, GadgetError> {
    let mut out = Vec::new();
    let q_pins = params.q_count + 1;
    if n.pins.len() >= q_pins {
        let last = &n.pins[n.pins.len() - q_pins..];
        let gone: VertexSet = last.iter().flat_map(|p| p.interior.iter().copied().chain([p.shadow])).collect();
        out.push(Mutant {
            name: "last H_Q copy deleted".into(),
            gadget: n.without_vertices(&gone)?,
        });
    }
    for (i, pin) in n.pins.iter().enumerate() {
        let gone: VertexSet = pin.interior.iter().copied().collect();
        out.push(Mutant {
            name: format!("pin {i} deleted"),
            gadget: n.without_vertices(&gone)?,
        });
    }
    let shadows: VertexSet = n.pins.iter().rev().take(q_pins).map(|p| p.shadow).collect();
    if let Some(e) = n.graph.edges().find(|&(u, v)| shadows.contains(&u) && shadows.contains(&v)) {
        out.push(Mutant {
            name: "edge of the last H_Q copy deleted".into(),
            gadget: n.without_edges(&[e]),
        });
    }
    let forcing = n.forcing_edges();
    for (i, pin) in n.pins.iter().enumerate() {
        let interior: VertexSet = pin.interior.iter().copied().collect();
        let edges: Vec<_> = forcing
            .iter()
            .copied()
            .filter(|&(u, v)| interior.contains(&u) && interior.contains(&v))
            .collect();
        out.push(Mutant {
            name: format!("forcing edges of pin {i} deleted"),
            gadget: n.without_edges(&edges),
        });
    }
    Ok(out)
}
