//! graph6 and plain edge-list formats.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::ParseError;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut String, n: usize) {
    let push6 = |out: &mut String, v: usize| out.push((63 + (v & 63) as u8) as char);
    if n <= 62 {
        push6(out, n);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            push6(out, n >> shift);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            push6(out, n >> shift);
        }
    }
}

/// Encodes `g` as a graph6 string (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn from_graph6(text: &str) -> Result<Graph, ParseError> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |m: &str| ParseError::Graph6(m.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the printable graph6 range"));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, body) = match bytes {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated size field"));
            }
            (rest[..6].iter().fold(0, |a, &b| a << 6 | val(b)), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated size field"));
            }
            (rest[..3].iter().fold(0, |a, &b| a << 6 | val(b)), &rest[3..])
        }
        [first, rest @ ..] => (val(*first), rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad(&format!("expected {} data bytes for n = {n}, found {}", bits.div_ceil(6), body.len())));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if val(body[k / 6]) >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_numbers(line: &str, lineno: usize, want: usize) -> Result<Vec<usize>, ParseError> {
    let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
    match nums {
        Ok(v) if v.len() == want => Ok(v),
        Ok(v) => Err(ParseError::syntax(lineno, format!("expected {want} integers, found {}", v.len()))),
        Err(_) => Err(ParseError::syntax(lineno, "expected non-negative integers")),
    }
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`
/// with 0-based indices. Blank lines and `#` comments are ignored.
pub fn from_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = meaningful_lines(text);
    let (lineno, header) = lines.next().ok_or_else(|| ParseError::syntax(1, "missing `n m` header"))?;
    let hm = parse_numbers(header, lineno, 2)?;
    let (n, m) = (hm[0], hm[1]);
    let mut g = Graph::empty(n);
    for _ in 0..m {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| ParseError::syntax(lineno, format!("expected {m} edges")))?;
        let uv = parse_numbers(line, lineno, 2)?;
        g.add_edge(uv[0], uv[1]).map_err(|e| ParseError::syntax(lineno, e.to_string()))?;
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(ParseError::syntax(lineno, "trailing content after the edge list"));
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Reads either format: edge-list when the first meaningful line is two
/// integers, graph6 otherwise.
pub fn read_graph(text: &str) -> Result<Graph, ParseError> {
    let first = meaningful_lines(text).next();
    match first {
        Some((_, line)) if line.split_whitespace().count() == 2 && line.split_whitespace().all(|t| t.parse::<usize>().is_ok()) => {
            from_edge_list(text)
        }
        Some((_, line)) => from_graph6(line),
        None => Err(ParseError::syntax(1, "empty input")),
    }
}

// Graphs serialise as graph6 strings.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        // reference strings from the graph6 format description
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&complete(2)), "A_");
        assert_eq!(to_graph6(&Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap()), "DQc");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&cycle(5)), "Dhc");
    }

    #[test]
    fn large_orders_use_long_size_field() {
        let g = Graph::empty(63);
        let s = to_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn header_and_whitespace_accepted() {
        assert_eq!(from_graph6(">>graph6<<A_\n").unwrap(), complete(2));
    }

    #[test]
    fn malformed_graph6_rejected() {
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("A_?").is_err());
        assert!(from_graph6("A\u{7f}").is_err());
    }

    #[test]
    fn edge_list_with_comments() {
        let g = from_edge_list("# a path\n3 2\n\n0 1 # first\n1 2\n").unwrap();
        assert_eq!(g, path(3));
        assert!(from_edge_list("3 1\n0 0\n").is_err());
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("2 1\n0 5\n").is_err());
    }

    #[test]
    fn read_graph_detects_format() {
        assert_eq!(read_graph("A_\n").unwrap(), complete(2));
        assert_eq!(read_graph("2 1\n0 1\n").unwrap(), complete(2));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..80).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut g = Graph::empty(n);
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.set_edge(i, j);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
            prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }
}
