//! Induced-hereditary properties presented by a finite set of minimal
//! forbidden induced subgraphs.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, PropertyError};
use crate::graph::named::{name_of, parse_named};
use crate::graph::{
    block_decomposition, contains_induced, io, AnchoredMatcher, Graph, GraphEnumerator, VertexSet,
    DEFAULT_ENUMERATION_BOUND,
};

/// A graph class given by its minimal forbidden induced subgraphs.
///
/// The forbidden list is stored minimalised: canonically labelled, pairwise
/// non-isomorphic, an antichain under `≤`, sorted by canonical form.
/// Equality compares forbidden lists only; names are labels.
#[derive(Clone)]
pub struct Property {
    name: String,
    forbidden: Vec<Graph>,
    matchers: Vec<AnchoredMatcher>,
}

impl PartialEq for Property {
    fn eq(&self, other: &Self) -> bool {
        self.forbidden == other.forbidden
    }
}

impl Eq for Property {}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Property")
            .field("name", &self.name)
            .field("forbidden", &self.forbidden)
            .finish()
    }
}

impl Property {
    pub fn new(name: impl Into<String>, forbidden: Vec<Graph>) -> Result<Self, PropertyError> {
        let name = name.into();
        if forbidden.is_empty() {
            return Err(PropertyError::Empty(name));
        }
        if let Some(g) = forbidden.iter().find(|g| g.order() <= 1) {
            return Err(PropertyError::TrivialForbidden { name, order: g.order() });
        }
        let forbidden = minimalize(&forbidden);
        let matchers = forbidden.iter().map(AnchoredMatcher::new).collect();
        Ok(Property { name, forbidden, matchers })
    }

    /// `O`: edgeless graphs, `F(O) = {K₂}`.
    pub fn edgeless() -> Self {
        Property::new("O", vec![Graph::complete(2)]).expect("K2 is a valid forbidden graph")
    }

    /// `T`: triangle-free graphs, `F(T) = {K₃}`.
    pub fn triangle_free() -> Self {
        Property::new("T", vec![Graph::complete(3)]).expect("K3 is a valid forbidden graph")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "O" => Some(Self::edgeless()),
            "T" => Some(Self::triangle_free()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn forbidden(&self) -> &[Graph] {
        &self.forbidden
    }

    pub fn satisfies(&self, g: &Graph) -> bool {
        self.first_violation(g).is_none()
    }

    /// The first forbidden graph (by index) found in `g`, with a witness.
    pub fn first_violation(&self, g: &Graph) -> Option<(usize, VertexSet)> {
        self.forbidden
            .iter()
            .enumerate()
            .find_map(|(i, f)| contains_induced(g, f).map(|w| (i, w)))
    }

    /// Whether adding `v` to the vertex set `part` (which must already induce
    /// a member of the class) creates a forbidden subgraph; returns the copy.
    pub fn violation_through(&self, g: &Graph, part: &FixedBitSet, v: usize) -> Option<Vec<usize>> {
        self.matchers.iter().find_map(|m| m.find_through(g, part, v))
    }

    /// Additive iff every minimal forbidden graph is connected.
    pub fn is_additive(&self) -> bool {
        self.forbidden.iter().all(Graph::is_connected)
    }

    pub fn intersect(&self, other: &Property) -> Property {
        if self == other {
            return self.clone();
        }
        let all: Vec<Graph> = self.forbidden.iter().chain(&other.forbidden).cloned().collect();
        Property::new(format!("{}&{}", self.name, other.name), all)
            .expect("union of valid forbidden sets is valid")
    }

    /// The class of complements: `F(co-P) = { co-H : H ∈ F(P) }`.
    pub fn complement(&self) -> Property {
        let name = match self.name.strip_prefix("co-") {
            Some(base) => base.to_string(),
            None => format!("co-{}", self.name),
        };
        let forbidden = self.forbidden.iter().map(Graph::complement).collect();
        Property::new(name, forbidden).expect("complements keep the vertex count")
    }

    /// `(H_P, p)` with `H_P` a smallest forbidden graph and `p = |V(H_P)| - 1`,
    /// so every graph on at most `p` vertices is in the class.
    pub fn smallest_forbidden(&self) -> (Graph, usize) {
        let h = self.forbidden[0].clone();
        let p = h.order() - 1;
        (h, p)
    }

    /// The smallest end-block over all forbidden graphs; ties go to the
    /// earlier forbidden graph, then the earlier block.
    pub fn minimal_end_block(&self) -> Result<EndBlockChoice, PropertyError> {
        if !self.is_additive() {
            return Err(PropertyError::NotAdditive(self.name.clone()));
        }
        let mut best: Option<(usize, &Graph, VertexSet, Option<usize>)> = None;
        for f in &self.forbidden {
            let d = block_decomposition(f);
            for &i in &d.end_block_indices {
                let block = &d.blocks[i];
                if best.as_ref().map_or(true, |b| block.len() < b.0) {
                    let cut = d.cut_vertices_in(i).into_iter().next();
                    best = Some((block.len(), f, block.clone(), cut));
                }
            }
        }
        let (k, f, block, cut) = best.expect("forbidden set is non-empty");
        let y = cut.unwrap_or_else(|| *block.iter().next().expect("blocks are non-empty"));
        let x = f
            .neighbours(y)
            .find(|w| block.contains(w))
            .expect("connected forbidden graphs have blocks of at least two vertices");
        Ok(EndBlockChoice {
            f: f.clone(),
            block,
            k,
            y,
            x,
        })
    }

    /// Parses a property definition file.
    ///
    /// ```text
    /// property T2
    /// K3          # shorthand stanza
    /// 4 4         # edge-list stanza: header, then the edges
    /// 0 1
    /// 1 2
    /// 2 3
    /// 3 0
    /// ```
    pub fn parse(text: &str) -> Result<Property, ParseError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (!l.is_empty()).then_some((i + 1, l))
            })
            .collect();
        let mut it = lines.into_iter();
        let (lineno, header) = it.next().ok_or_else(|| ParseError::syntax(1, "missing `property <name>` header"))?;
        let name = header
            .strip_prefix("property")
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .ok_or_else(|| ParseError::syntax(lineno, "expected `property <name>`"))?;
        let mut forbidden = Vec::new();
        while let Some((lineno, line)) = it.next() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let numeric = tokens.len() == 2 && tokens.iter().all(|t| t.parse::<usize>().is_ok());
            if numeric {
                let m: usize = tokens[1].parse().expect("checked numeric");
                let mut stanza = format!("{line}\n");
                for _ in 0..m {
                    let (_, edge) = it
                        .next()
                        .ok_or_else(|| ParseError::syntax(lineno, format!("stanza declares {m} edges")))?;
                    stanza.push_str(edge);
                    stanza.push('\n');
                }
                forbidden.push(io::from_edge_list(&stanza).map_err(|e| match e {
                    ParseError::Syntax { message, .. } => ParseError::syntax(lineno, message),
                    other => other,
                })?);
            } else if let Some(g6) = line.strip_prefix("g6:") {
                forbidden.push(io::from_graph6(g6)?);
            } else if tokens.len() == 1 {
                forbidden.push(parse_named(line)?);
            } else {
                return Err(ParseError::syntax(lineno, format!("cannot read stanza `{line}`")));
            }
        }
        Property::new(name, forbidden).map_err(|e| ParseError::syntax(lineno, e.to_string()))
    }

    /// Renders the definition-file format; [`Property::parse`] reads it back.
    pub fn to_definition(&self) -> String {
        let mut out = format!("property {}\n", self.name);
        for g in &self.forbidden {
            match name_of(g) {
                Some(n) => out.push_str(&format!("{n}\n")),
                None => out.push_str(&io::to_edge_list(g)),
            }
        }
        out
    }

    /// Forbidden graphs as graph6 strings, in stored order.
    pub fn forbidden_graph6(&self) -> Vec<String> {
        self.forbidden.iter().map(io::to_graph6).collect()
    }
}

/// `≤`-minimal members of `graphs`, one per isomorphism class, canonically
/// labelled and sorted by canonical form.
pub fn minimalize(graphs: &[Graph]) -> Vec<Graph> {
    let mut forms: Vec<_> = graphs.iter().map(Graph::canonical_form).collect();
    forms.sort();
    forms.dedup();
    let mut kept: Vec<Graph> = Vec::new();
    for form in forms {
        let g = form.to_graph();
        if kept.iter().all(|h| contains_induced(&g, h).is_none()) {
            kept.push(g);
        }
    }
    kept
}

/// `(H_P, p)` and `(H_Q, q)` for a property pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyPairParams {
    pub h_p: Graph,
    pub p_count: usize,
    pub h_q: Graph,
    pub q_count: usize,
}

impl PropertyPairParams {
    pub fn new(p: &Property, q: &Property) -> Self {
        let (h_p, p_count) = p.smallest_forbidden();
        let (h_q, q_count) = q.smallest_forbidden();
        PropertyPairParams { h_p, p_count, h_q, q_count }
    }

    /// Edge size of the hypergraph colouring problem this pair encodes.
    pub fn r(&self) -> usize {
        self.p_count + self.q_count
    }
}

/// A smallest end-block `B` of a forbidden graph `F`, with the attachment
/// vertex `y` and a neighbour `x` of `y` inside `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndBlockChoice {
    pub f: Graph,
    pub block: VertexSet,
    pub k: usize,
    pub y: usize,
    pub x: usize,
}

pub fn satisfies(p: &Property, g: &Graph) -> bool {
    p.satisfies(g)
}

pub fn is_additive(p: &Property) -> bool {
    p.is_additive()
}

pub fn intersect(d: &Property, p: &Property) -> Property {
    d.intersect(p)
}

pub fn complement_property(p: &Property) -> Property {
    p.complement()
}

/// Canonical representatives of the members of `p` on at most `max_n`
/// vertices; `max_n` may not exceed [`DEFAULT_ENUMERATION_BOUND`].
pub fn enumerate_graphs_satisfying(p: &Property, max_n: usize) -> Result<GraphEnumerator<'_>, PropertyError> {
    enumerate_graphs_satisfying_with_bound(p, max_n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_graphs_satisfying_with_bound(
    p: &Property,
    max_n: usize,
    bound: usize,
) -> Result<GraphEnumerator<'_>, PropertyError> {
    Ok(GraphEnumerator::new(max_n, bound, move |g| p.satisfies(g))?)
}
