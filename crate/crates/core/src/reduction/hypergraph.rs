use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, ReductionError};
use crate::graph::VertexSet;

/// Largest vertex count [`brute_pinr`] will search.
pub const BRUTE_FORCE_BOUND: usize = 24;

/// An `r`-uniform hypergraph together with the target `p` of the question
/// "is there a set `U` meeting every edge in exactly `p` vertices".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    pub n_vertices: usize,
    pub r: usize,
    pub p_target: usize,
    /// Each edge sorted ascending; edge order is input order.
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n_vertices: usize, r: usize, p_target: usize, edges: Vec<Vec<usize>>) -> Result<Self, String> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.len() != r {
                return Err(format!("edge {i} has {} vertices, expected {r}", e.len()));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("edge {i} repeats a vertex"));
            }
            if let Some(&v) = e.last().filter(|&&v| v >= n_vertices) {
                return Err(format!("edge {i} uses vertex {v} but n = {n_vertices}"));
            }
            sorted.push(e);
        }
        Ok(Hypergraph { n_vertices, r, p_target, edges: sorted })
    }

    /// A note when `(r, p)` lies outside `r >= 3, 1 <= p < r`, where the
    /// problem is NP-complete. Such instances are still accepted.
    pub fn regime_warning(&self) -> Option<String> {
        (self.r < 3 || self.p_target == 0 || self.p_target >= self.r)
            .then(|| format!("r = {}, p = {} is outside the NP-complete regime 1 <= p < r, r >= 3", self.r, self.p_target))
    }

    /// Whether `u` meets every edge in exactly `p_target` vertices.
    pub fn is_certificate(&self, u: &VertexSet) -> bool {
        self.first_violation(u).is_none()
    }

    /// The first edge not met in exactly `p_target` vertices, with the size
    /// of the intersection.
    pub fn first_violation(&self, u: &VertexSet) -> Option<(usize, usize)> {
        self.edges.iter().enumerate().find_map(|(i, e)| {
            let k = e.iter().filter(|v| u.contains(v)).count();
            (k != self.p_target).then_some((i, k))
        })
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {} {}", self.r, self.p_target, self.n_vertices, self.edges.len())?;
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a header `r p n m` followed by `m` lines of `r` vertex indices.
/// Blank lines and `#` comments are skipped.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    });
    let numbers = |lineno: usize, line: &str| -> Result<Vec<usize>, ParseError> {
        line.split_whitespace()
            .map(|t| t.parse().map_err(|_| ParseError::syntax(lineno, format!("`{t}` is not a non-negative integer"))))
            .collect()
    };
    let (lineno, header) = lines.next().ok_or_else(|| ParseError::syntax(1, "missing `r p n m` header"))?;
    let h = numbers(lineno, header)?;
    let [r, p, n, m] = h[..] else {
        return Err(ParseError::syntax(lineno, format!("header needs 4 integers `r p n m`, found {}", h.len())));
    };
    let mut edges = Vec::with_capacity(m);
    let mut last = lineno;
    for (lineno, line) in lines.by_ref().take(m) {
        let e = numbers(lineno, line)?;
        if e.len() != r {
            return Err(ParseError::syntax(lineno, format!("edge has {} vertices, expected {r}", e.len())));
        }
        let distinct: BTreeSet<usize> = e.iter().copied().collect();
        if distinct.len() != r {
            return Err(ParseError::syntax(lineno, "edge repeats a vertex"));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= n) {
            return Err(ParseError::syntax(lineno, format!("vertex {v} out of range for n = {n}")));
        }
        edges.push(e);
        last = lineno;
    }
    if edges.len() != m {
        return Err(ParseError::syntax(last, format!("expected {m} edges, found {}", edges.len())));
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(ParseError::syntax(lineno, "trailing content after the edges"));
    }
    Hypergraph::new(n, r, p, edges).map_err(|msg| ParseError::syntax(lineno, msg))
}

/// The lexicographically least `U` (compared as ascending vertex lists)
/// meeting every edge in exactly `p_target` vertices.
pub fn brute_pinr(h: &Hypergraph) -> Result<Option<VertexSet>, ReductionError> {
    let n = h.n_vertices;
    if n > BRUTE_FORCE_BOUND {
        return Err(ReductionError::BoundExceeded(n));
    }
    let masks: Vec<u32> = h.edges.iter().map(|e| e.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let target = h.p_target as u32;
    let mut best: Option<Vec<usize>> = None;
    for u in 0u32..(1u32 << n) {
        if masks.iter().all(|&e| (e & u).count_ones() == target) {
            let list: Vec<usize> = (0..n).filter(|&v| u >> v & 1 == 1).collect();
            if best.as_ref().map_or(true, |b| list < *b) {
                best = Some(list);
            }
        }
    }
    Ok(best.map(|b| b.into_iter().collect()))
}

/// All `r`-uniform hypergraphs with at most `max_vertices` vertices and at
/// most `max_edges` edges, one per isomorphism class, each with the given
/// target. Ordered by vertex count, then edge count, then canonical edge
/// list.
pub fn enumerate_hypergraphs(max_vertices: usize, max_edges: usize, r: usize, p_target: usize) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let all = crate::gadgets::subsets_of(n, r);
        let perms = permutations(n);
        for m in 0..=max_edges.min(all.len()) {
            let mut seen = BTreeSet::new();
            for choice in crate::gadgets::subsets_of(all.len(), m) {
                let edges: Vec<Vec<usize>> = choice.iter().map(|&i| all[i].clone()).collect();
                let canon = perms
                    .iter()
                    .map(|perm| {
                        let mut es: Vec<Vec<usize>> = edges
                            .iter()
                            .map(|e| {
                                let mut f: Vec<usize> = e.iter().map(|&v| perm[v]).collect();
                                f.sort_unstable();
                                f
                            })
                            .collect();
                        es.sort();
                        es
                    })
                    .min()
                    .unwrap_or_default();
                seen.insert(canon);
            }
            for edges in seen {
                out.push(Hypergraph { n_vertices: n, r, p_target, edges });
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            let j = if k % 2 == 0 { i } else { 0 };
            cur.swap(j, k - 1);
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets_naive(n: usize) -> Vec<VertexSet> {
        (0u32..1 << n).map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect()
    }

    #[test]
    fn parse_examples() {
        let h = parse_hypergraph("3 1 3 1\n0 1 2\n").unwrap();
        assert_eq!((h.r, h.p_target, h.n_vertices), (3, 1, 3));
        assert_eq!(h.edges, [vec![0, 1, 2]]);
        let h = parse_hypergraph("3 1 4 2\n0 1 2\n1 2 3\n").unwrap();
        assert_eq!(h.edges.len(), 2);
        assert!(parse_hypergraph("3 1 3 1\n0 1 1\n").is_err());
        assert!(parse_hypergraph("3 1 3 1\n0 1\n").is_err());
        assert!(parse_hypergraph("3 1 3 2\n0 1 2\n").is_err());
        assert!(parse_hypergraph("3 1 3 1\n0 1 3\n").is_err());
        assert!(parse_hypergraph("3 1 3\n").is_err());
    }

    #[test]
    fn display_round_trips() {
        let h = parse_hypergraph("# two edges\n3 1 4 2\n2 1 0\n1 2 3\n").unwrap();
        assert_eq!(parse_hypergraph(&h.to_string()).unwrap(), h);
        assert_eq!(h.edges[0], [0, 1, 2]);
    }

    #[test]
    fn regime() {
        assert!(parse_hypergraph("3 1 3 1\n0 1 2\n").unwrap().regime_warning().is_none());
        let out = parse_hypergraph("2 1 2 1\n0 1\n").unwrap();
        assert!(out.regime_warning().is_some());
        assert!(Hypergraph::new(3, 3, 0, vec![]).unwrap().regime_warning().is_some());
    }

    #[test]
    fn brute_examples() {
        let single = parse_hypergraph("3 1 3 1\n0 1 2\n").unwrap();
        assert_eq!(brute_pinr(&single).unwrap(), Some(VertexSet::from([0])));
        let all = parse_hypergraph("3 1 4 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n").unwrap();
        assert_eq!(brute_pinr(&all).unwrap(), None);
        let none = Hypergraph::new(5, 3, 1, vec![]).unwrap();
        assert_eq!(brute_pinr(&none).unwrap(), Some(VertexSet::new()));
        assert!(brute_pinr(&Hypergraph::new(30, 3, 1, vec![]).unwrap()).is_err());
    }

    #[test]
    fn brute_agrees_with_set_oracle() {
        for h in enumerate_hypergraphs(5, 4, 3, 1) {
            let naive = subsets_naive(h.n_vertices)
                .into_iter()
                .filter(|u| h.is_certificate(u))
                .min_by_key(|u| u.iter().copied().collect::<Vec<_>>());
            assert_eq!(brute_pinr(&h).unwrap(), naive, "{h}");
        }
    }

    #[test]
    fn hypergraph_classes() {
        // one class per edge count on four vertices; two on three (0 or 1 edge)
        let hs = enumerate_hypergraphs(4, 3, 3, 1);
        let count = |n: usize| hs.iter().filter(|h| h.n_vertices == n).count();
        assert_eq!([count(0), count(1), count(2), count(3), count(4)], [1, 1, 1, 2, 4]);
        // 3-uniform on five vertices with two edges: sharing one or two vertices
        let five = enumerate_hypergraphs(5, 2, 3, 1);
        assert_eq!(five.iter().filter(|h| h.n_vertices == 5 && h.edges.len() == 2).count(), 2);
        assert_eq!(permutations(4).len(), 24);
    }
}
