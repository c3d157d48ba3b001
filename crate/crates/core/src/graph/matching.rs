//! Induced-subgraph matching by backtracking over bitset candidate sets.

use fixedbitset::FixedBitSet;

use super::{canonical_labelling, Graph, VertexSet};

/// Extends a partial embedding of `pattern` (positions `order[..k]` already
/// mapped) into `allowed` vertices of `host`, trying candidates in increasing
/// index order.
fn extend(
    host: &Graph,
    pattern: &Graph,
    allowed: &FixedBitSet,
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut FixedBitSet,
) -> bool {
    if k == order.len() {
        return true;
    }
    let u = order[k];
    let mut cand = allowed.clone();
    cand.difference_with(used);
    for &w in &order[..k] {
        let image = host.row(map[w]);
        if pattern.has_edge(u, w) {
            cand.intersect_with(image);
        } else {
            cand.difference_with(image);
        }
    }
    for h in cand.ones() {
        map[u] = h;
        used.insert(h);
        if extend(host, pattern, allowed, order, k + 1, map, used) {
            return true;
        }
        used.set(h, false);
    }
    false
}

/// An induced embedding of `pattern` into `host`, as the image of each pattern
/// vertex. Returns the lexicographically least such sequence.
pub fn find_induced_embedding(host: &Graph, pattern: &Graph) -> Option<Vec<usize>> {
    let k = pattern.order();
    if k > host.order() {
        return None;
    }
    let mut allowed = FixedBitSet::with_capacity(host.order());
    allowed.insert_range(..);
    let order: Vec<usize> = (0..k).collect();
    let mut map = vec![0; k];
    let mut used = FixedBitSet::with_capacity(host.order());
    extend(host, pattern, &allowed, &order, 0, &mut map, &mut used).then_some(map)
}

/// A vertex set of `host` inducing a copy of `pattern`, if any. The witness is
/// the image of the lexicographically least embedding.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> Option<VertexSet> {
    find_induced_embedding(host, pattern).map(|m| m.into_iter().collect())
}

/// A pattern prepared for repeated "is there a copy through vertex `v`"
/// queries, as issued by the partition solver after each assignment.
#[derive(Debug, Clone)]
pub struct AnchoredMatcher {
    pattern: Graph,
    /// One search order per automorphism orbit of the pattern; each starts
    /// at the orbit representative and grows breadth-first where possible.
    orders: Vec<Vec<usize>>,
}

impl AnchoredMatcher {
    pub fn new(pattern: &Graph) -> Self {
        let reps = canonical_labelling(pattern).orbit_representatives();
        let mut anchors: Vec<usize> = reps.clone();
        anchors.sort_unstable();
        anchors.dedup();
        let orders = anchors.into_iter().map(|a| bfs_order(pattern, a)).collect();
        AnchoredMatcher {
            pattern: pattern.clone(),
            orders,
        }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// An induced copy of the pattern inside `allowed` that uses `v`.
    /// `allowed` must contain `v`.
    pub fn find_through(&self, host: &Graph, allowed: &FixedBitSet, v: usize) -> Option<Vec<usize>> {
        let k = self.pattern.order();
        if k == 0 || allowed.count_ones(..) < k {
            return None;
        }
        let mut map = vec![0; k];
        let mut used = FixedBitSet::with_capacity(host.order());
        for order in &self.orders {
            map[order[0]] = v;
            used.clear();
            used.insert(v);
            if extend(host, &self.pattern, allowed, order, 1, &mut map, &mut used) {
                return Some(map);
            }
        }
        None
    }
}

fn bfs_order(g: &Graph, start: usize) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in std::iter::once(start).chain(0..n) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in g.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::are_isomorphic;

    fn subsets(n: usize, k: usize) -> Vec<VertexSet> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect())
            .collect()
    }

    fn brute_contains(host: &Graph, pattern: &Graph) -> bool {
        subsets(host.order(), pattern.order())
            .iter()
            .any(|s| are_isomorphic(&host.induced_subgraph(s).unwrap().0, pattern))
    }

    #[test]
    fn examples() {
        assert_eq!(contains_induced(&path(4), &complete(2)), Some(VertexSet::from([0, 1])));
        assert_eq!(contains_induced(&cycle(4), &complete(3)), None);
        let w = contains_induced(&bowtie(), &path(3)).unwrap();
        assert!(are_isomorphic(&bowtie().induced_subgraph(&w).unwrap().0, &path(3)));
        assert!(brute_contains(&bowtie(), &path(3)));
    }

    #[test]
    fn null_pattern_always_embeds() {
        assert_eq!(contains_induced(&Graph::empty(0), &Graph::empty(0)), Some(VertexSet::new()));
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let patterns = [complete(2), path(3), complete(3), path(3).complement(), cycle(4), path(4), paw(), claw()];
        for host in crate::graph::enumerate_graphs(6).unwrap() {
            for p in &patterns {
                let found = contains_induced(&host, p);
                assert_eq!(found.is_some(), brute_contains(&host, p), "{host:?} {p:?}");
                if let Some(s) = found {
                    assert!(are_isomorphic(&host.induced_subgraph(&s).unwrap().0, p));
                }
            }
        }
    }

    #[test]
    fn anchored_matcher_only_reports_copies_through_the_anchor() {
        let host = complete(3).disjoint_union(&path(3));
        let m = AnchoredMatcher::new(&complete(3));
        let mut all = FixedBitSet::with_capacity(host.order());
        all.insert_range(..);
        assert!(m.find_through(&host, &all, 1).is_some());
        assert!(m.find_through(&host, &all, 4).is_none());
        let mut part = all.clone();
        part.set(2, false);
        assert!(m.find_through(&host, &part, 0).is_none());
    }
}
