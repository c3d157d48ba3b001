//! Small named graphs and the shorthand grammar used in property files.
//!
//! Grammar: `K<n>`, `P<n>` (path on n vertices), `C<n>`, `E<n>` (edgeless),
//! `W<n>` (wheel with an n-cycle rim), `paw`, `bowtie`, `claw`, `diamond`;
//! `co-X` is the complement of `X`, `kX` is k disjoint copies of `X`, and
//! `X+Y` is the disjoint union.

use super::{are_isomorphic, Graph};
use crate::error::ParseError;

pub fn complete(n: usize) -> Graph {
    Graph::complete(n)
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut g = path(n);
    g.set_edge(0, n - 1);
    g
}

/// Triangle with a pendant edge.
pub fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).expect("valid")
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).expect("valid")
}

pub fn claw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).expect("valid")
}

pub fn diamond() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).expect("valid")
}

/// Hub `0` joined to every vertex of the cycle `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    let mut g = Graph::empty(1).disjoint_union(&cycle(rim));
    for v in 1..=rim {
        g.set_edge(0, v);
    }
    g
}

fn sized(rest: &str, name: &str) -> Result<usize, ParseError> {
    rest.parse().map_err(|_| ParseError::UnknownName(name.to_string()))
}

pub fn parse_named(name: &str) -> Result<Graph, ParseError> {
    let name = name.trim();
    let unknown = || ParseError::UnknownName(name.to_string());
    if let Some((a, b)) = name.split_once('+') {
        return Ok(parse_named(a)?.disjoint_union(&parse_named(b)?));
    }
    if let Some(rest) = name.strip_prefix("co-") {
        return Ok(parse_named(rest)?.complement());
    }
    let digits = name.chars().take_while(|c| c.is_ascii_digit()).count();
    if digits > 0 && digits < name.len() {
        let k: usize = name[..digits].parse().map_err(|_| unknown())?;
        return Ok(parse_named(&name[digits..])?.repeat(k));
    }
    let g = match name {
        "paw" => paw(),
        "bowtie" => bowtie(),
        "claw" => claw(),
        "diamond" => diamond(),
        _ => {
            let mut chars = name.chars();
            let head = chars.next().ok_or_else(unknown)?;
            let rest = chars.as_str();
            let n = sized(rest, name)?;
            match head {
                'K' => complete(n),
                'P' if n >= 1 => path(n),
                'C' if n >= 3 => cycle(n),
                'E' => Graph::empty(n),
                'W' if n >= 3 => wheel(n),
                _ => return Err(unknown()),
            }
        }
    };
    Ok(g)
}

/// A shorthand name for `g` if it is one of the common small graphs.
pub fn name_of(g: &Graph) -> Option<String> {
    let n = g.order();
    let mut candidates: Vec<(String, Graph)> = vec![
        (format!("K{n}"), complete(n)),
        (format!("E{n}"), Graph::empty(n)),
    ];
    if n >= 1 {
        candidates.push((format!("P{n}"), path(n)));
    }
    if n >= 3 {
        candidates.push((format!("C{n}"), cycle(n)));
        candidates.push((format!("co-P{n}"), path(n).complement()));
    }
    if n >= 4 {
        candidates.push((format!("W{}", n - 1), wheel(n - 1)));
    }
    candidates.extend(
        [("paw", paw()), ("bowtie", bowtie()), ("claw", claw()), ("diamond", diamond())]
            .into_iter()
            .map(|(s, g)| (s.to_string(), g)),
    );
    if n == 4 {
        candidates.push(("2K2".to_string(), complete(2).repeat(2)));
    }
    candidates
        .into_iter()
        .find(|(_, h)| h.order() == n && are_isomorphic(g, h))
        .map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_named("K3").unwrap(), complete(3));
        assert_eq!(parse_named("2K2").unwrap(), complete(2).repeat(2));
        assert!(are_isomorphic(&parse_named("co-P3").unwrap(), &parse_named("K2+K1").unwrap()));
        assert_eq!(parse_named("W5").unwrap().size(), 10);
        assert!(parse_named("Q7").is_err());
        assert!(parse_named("C2").is_err());
    }

    #[test]
    fn names_round_trip() {
        for s in ["K2", "K3", "P4", "C5", "paw", "bowtie", "W5"] {
            assert_eq!(name_of(&parse_named(s).unwrap()).as_deref(), Some(s));
        }
    }
}
