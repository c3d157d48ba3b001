//! Canonical labelling by individualisation and colour refinement, with
//! pruning by the automorphisms discovered along the way.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Graph;

/// An isomorphism invariant that determines the graph up to isomorphism.
///
/// Ordered by vertex count, then edge count, then the upper-triangle
/// adjacency bits of the canonically relabelled graph (graph6 column order,
/// most significant bit first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub order: usize,
    pub size: usize,
    pub bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.order);
        let mut k = 0;
        for j in 1..self.order {
            for i in 0..j {
                if self.bits[k / 64] >> (63 - k % 64) & 1 == 1 {
                    g.set_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}

/// Result of canonical labelling.
#[derive(Debug, Clone)]
pub struct Labelling {
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
    pub form: CanonicalForm,
    /// Automorphisms found during the search; they generate a subgroup of
    /// `Aut(G)` that is enough to compute orbits for pruning.
    pub generators: Vec<Vec<usize>>,
}

impl Labelling {
    /// Orbits of the group generated by `generators`, as a representative
    /// (least element) per vertex.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        orbits(self.position.len(), self.generators.iter())
    }
}

fn form_of(g: &Graph, position: &[usize]) -> CanonicalForm {
    let n = g.order();
    let mut inverse = vec![0; n];
    for (v, &p) in position.iter().enumerate() {
        inverse[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for j in 1..n {
        let row = g.row(inverse[j]);
        for &vi in &inverse[..j] {
            if row.contains(vi) {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    CanonicalForm {
        order: n,
        size: g.size(),
        bits,
    }
}

fn orbits<'a>(n: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gamma in gens {
        for (v, &w) in gamma.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Splits cells until every vertex in a cell sees the same number of
/// neighbours in every cell. Sub-cells are ordered by their neighbour-count
/// signature, so the result is isomorphism invariant.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut cell_of = vec![0; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut changed = false;
        let mut next = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k];
                    for w in g.neighbours(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    changed |= i - start != keyed.len();
                    start = i;
                }
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(CanonicalForm, Vec<usize>)>,
    best: Option<(CanonicalForm, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.order();
        let mut position = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            position[c[0]] = i;
        }
        let form = form_of(self.g, &position);
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == form {
                let mut inverse = vec![0; n];
                for (v, &p) in reference.1.iter().enumerate() {
                    inverse[p] = v;
                }
                let gamma: Vec<usize> = (0..n).map(|v| inverse[position[v]]).collect();
                if gamma.iter().enumerate().any(|(v, &w)| v != w) {
                    self.generators.push(gamma);
                }
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some((form.clone(), position.clone()));
        }
        let better = match &self.best {
            None => true,
            Some((b, _)) => form.cmp(b) == Ordering::Less,
        };
        if better {
            self.best = Some((form, position));
        }
    }

    fn same_orbit(&self, a: usize, b: usize, prefix: &[usize]) -> bool {
        let fixing = self
            .generators
            .iter()
            .filter(|gamma| prefix.iter().all(|&v| gamma[v] == v));
        let reps = orbits(self.g.order(), fixing);
        reps[a] == reps[b]
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if cells.len() == self.g.order() {
            self.leaf(&cells);
            return;
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&t| self.same_orbit(t, v, prefix)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            let child = refine(self.g, child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }
}

pub fn canonical_labelling(g: &Graph) -> Labelling {
    let n = g.order();
    if n == 0 {
        return Labelling {
            position: Vec::new(),
            form: form_of(g, &[]),
            generators: Vec::new(),
        };
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let root = refine(g, vec![(0..n).collect()]);
    search.descend(root, &mut Vec::new());
    let (form, position) = search.best.expect("search reaches at least one leaf");
    Labelling {
        position,
        form,
        generators: search.generators,
    }
}

impl Graph {
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_labelling(self).form
    }

    /// The canonically relabelled copy of this graph.
    pub fn canonical(&self) -> Graph {
        self.canonical_form().to_graph()
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && g.degree_sequence() == h.degree_sequence()
        && g.canonical_form() == h.canonical_form()
}
