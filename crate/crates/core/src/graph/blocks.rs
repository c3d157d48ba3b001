use serde::{Deserialize, Serialize};

use super::{Graph, VertexSet};

/// Blocks (maximal 2-connected pieces, bridges, isolated vertices) and cut
/// vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Sorted lexicographically by their sorted vertex lists.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// Indices into `blocks` of blocks holding at most one cut vertex.
    pub end_block_indices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn end_blocks(&self) -> impl Iterator<Item = &VertexSet> {
        self.end_block_indices.iter().map(move |&i| &self.blocks[i])
    }

    /// Cut vertices lying in block `i`.
    pub fn cut_vertices_in(&self, i: usize) -> VertexSet {
        self.blocks[i].intersection(&self.cut_vertices).copied().collect()
    }
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
    cut: VertexSet,
}

impl Tarjan<'_> {
    fn visit(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        let neighbours: Vec<usize> = self.g.neighbours(u).collect();
        for w in neighbours {
            if self.disc[w] == 0 {
                children += 1;
                self.edge_stack.push((u, w));
                self.visit(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.cut.insert(u);
                    }
                    let mut block = VertexSet::new();
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                self.edge_stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.order();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut: VertexSet::new(),
    };
    for v in 0..n {
        if t.disc[v] == 0 {
            if g.degree(v) == 0 {
                t.disc[v] = usize::MAX;
                t.blocks.push(VertexSet::from([v]));
            } else {
                t.visit(v, None);
            }
        }
    }
    let mut blocks = t.blocks;
    blocks.sort();
    let cut_vertices = t.cut;
    let end_block_indices = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.intersection(&cut_vertices).count() <= 1)
        .map(|(i, _)| i)
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
        end_block_indices,
    }
}
