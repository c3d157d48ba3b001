use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pqcol::graph::{io, named};
use pqcol::{Graph, Property};

/// A property given as a built-in name (`O`, `T`), a definition file, or an
/// inline list of forbidden graphs `forbid:P3;co-P3`.
pub fn property(arg: &str) -> Result<Property> {
    if let Some(list) = arg.strip_prefix("forbid:") {
        let graphs = list
            .split(';')
            .map(|n| named::parse_named(n.trim()))
            .collect::<Result<Vec<_>, _>>()
            .with_context(|| format!("reading forbidden list `{list}`"))?;
        return Ok(Property::new(arg, graphs)?);
    }
    if let Some(p) = Property::builtin(arg) {
        return Ok(p);
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return Property::parse(&text).with_context(|| format!("parsing property file {arg}"));
    }
    bail!("`{arg}` is neither a built-in property (O, T), a `forbid:` list, nor a readable file")
}

/// A comma-separated list of properties; files may be used as entries.
pub fn properties(arg: &str) -> Result<Vec<Property>> {
    arg.split(',').map(|s| property(s.trim())).collect()
}

pub fn pair(arg: &str) -> Result<(Property, Property)> {
    let mut props = properties(arg)?;
    if props.len() != 2 {
        bail!("expected two properties `P,Q`, got {}", props.len());
    }
    let q = props.pop().expect("two entries");
    let p = props.pop().expect("two entries");
    Ok((p, q))
}

/// A graph given as a file (graph6 or edge list) or a shorthand name such
/// as `K2` or `C5`.
pub fn graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return io::read_graph(&text).with_context(|| format!("parsing graph file {arg}"));
    }
    named::parse_named(arg).with_context(|| format!("`{arg}` is neither a readable graph file nor a graph name"))
}

/// Text for a forbidden graph in messages: its shorthand name when it has
/// one, graph6 otherwise.
pub fn describe(g: &Graph) -> String {
    named::name_of(g).unwrap_or_else(|| io::to_graph6(g))
}
