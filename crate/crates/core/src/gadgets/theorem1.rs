use crate::error::GadgetError;
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::partition::{check_strongly_unique, OrderedPartition};
use crate::properties::Property;

/// Peels the last factor off a product: returns `G'`, the disjoint union of
/// `g` and the fixture `H`, with every vertex of `g` joined to
/// `N(v_h) ∩ V_n`. Then `g ∈ P₁∘…∘Pₙ₋₁` iff `G' ∈ P₁∘…∘Pₙ`.
///
/// `g` keeps indices `0..|g|`; the fixture follows in its own order.
pub fn theorem1_transform(
    g: &Graph,
    factors: &[Property],
    fixture: (&Graph, &OrderedPartition),
    v_h: usize,
) -> Result<Graph, GadgetError> {
    let (h, partition) = fixture;
    if partition.n_parts() != factors.len() || partition.assignment().len() != h.order() || !partition.is_valid(h, factors) {
        return Err(GadgetError::InvalidFixturePartition);
    }
    if !check_strongly_unique(h, factors)?.is_strongly_unique {
        return Err(GadgetError::NotStronglyUnique);
    }
    let last: VertexSet = partition.part(factors.len() - 1);
    if last.is_empty() {
        return Err(GadgetError::EmptyLastPart);
    }
    if v_h >= h.order() || partition.part_of(v_h) != 0 {
        return Err(GadgetError::MisplacedVertex(v_h));
    }
    let mut b = GraphBuilder::from_graph(g);
    let map = b.embed(h, &vec![None; h.order()])?;
    let join: Vec<usize> = h.neighbours(v_h).filter(|w| last.contains(w)).map(|w| map[w]).collect();
    for v in 0..g.order() {
        for &w in &join {
            b.add_edge(v, w)?;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::o_t_anchors;
    use super::*;
    use crate::graph::{enumerate_graphs, named::*};
    use crate::partition::find_partition;

    fn ot() -> [Property; 2] {
        [Property::edgeless(), Property::triangle_free()]
    }

    fn transform(g: &Graph) -> Graph {
        let a = o_t_anchors();
        theorem1_transform(g, &ot(), (&a.g_pq, &a.partition()), a.p_vertex).unwrap()
    }

    fn in_product(g: &Graph) -> bool {
        find_partition(g, &ot()).unwrap().is_some()
    }

    #[test]
    fn small_examples() {
        let a = o_t_anchors();
        assert!(in_product(&transform(&Graph::empty(1))));
        assert!(!in_product(&transform(&complete(2))));
        assert_eq!(transform(&Graph::empty(0)), a.g_pq);
    }

    #[test]
    fn biconditional_on_small_graphs() {
        for g in enumerate_graphs(4).unwrap() {
            let edgeless = g.size() == 0;
            assert_eq!(in_product(&transform(&g)), edgeless, "{g:?}");
        }
    }

    #[test]
    fn bad_fixtures_rejected() {
        let a = o_t_anchors();
        let part = a.partition();
        let q = a.q_vertex;
        assert_eq!(
            theorem1_transform(&Graph::empty(1), &ot(), (&a.g_pq, &part), q),
            Err(GadgetError::MisplacedVertex(q))
        );
        let k2 = complete(2);
        let p = OrderedPartition::new(2, vec![0, 1]).unwrap();
        assert_eq!(
            theorem1_transform(&Graph::empty(1), &ot(), (&k2, &p), 0),
            Err(GadgetError::NotStronglyUnique)
        );
    }

    #[test]
    fn empty_last_part_rejected() {
        // K1 is strongly unique for [T, T], with the second part empty
        let t = Property::triangle_free();
        let p = OrderedPartition::new(2, vec![0]).unwrap();
        assert_eq!(
            theorem1_transform(&Graph::empty(1), &[t.clone(), t], (&Graph::empty(1), &p), 0),
            Err(GadgetError::EmptyLastPart)
        );
    }
}
