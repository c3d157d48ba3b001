use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pqcol::gadgets::VerifyLimits;
use pqcol::graph::io;
use pqcol::partition::{
    check_strongly_unique, enumerate_partitions_with, find_partition, search_unique, Limits, PartitionDocument,
};
use pqcol::reduction::{self, enumerate_hypergraphs, lift_certificate, parse_hypergraph};
use pqcol::{GadgetError, GadgetSet, PortedGadget, Property, ReductionCertificateMap, ReductionError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::fixtures::Fixtures;
use crate::input;
use crate::{Cli, Command, GadgetKind, Global, Outcome, PropCommand, SweepCommand, UniqueCommand};

/// What `reduce` writes next to the graph: the property pair (as definition
/// files) and the certificate map.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReductionSidecar {
    pub properties: [String; 2],
    pub map: ReductionCertificateMap,
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn outcome(positive: bool) -> Outcome {
    if positive {
        Outcome::Positive
    } else {
        Outcome::Negative
    }
}

fn verify_limits(g: &Global) -> VerifyLimits {
    let mut limits = VerifyLimits::default();
    if let Some(cap) = g.cap {
        limits.max_colourings = cap as usize;
    }
    limits
}

/// Gadgets for the pair, or a negative outcome when no fixture exists.
fn load_gadgets(g: &Global, pair: &str, verify: bool) -> Result<Result<GadgetSet, Outcome>> {
    let (p, q) = input::pair(pair)?;
    let fixtures = Fixtures::new(g.fixtures_dir.clone());
    let limits = verify_limits(g);
    match fixtures.gadgets(&p, &q, g.max_n as usize, verify.then_some(&limits)) {
        Ok(Some(set)) => Ok(Ok(set)),
        Ok(None) => {
            eprintln!(
                "no strongly uniquely ({},{})-partitionable graph with both parts non-empty on at most {} vertices; gadgets not built",
                p.name(),
                q.name(),
                g.max_n
            );
            Ok(Err(Outcome::Negative))
        }
        Err(e) => match e.downcast_ref::<GadgetError>() {
            Some(GadgetError::VerificationFailed(msg)) => {
                eprintln!("gadget verification failed: {msg}");
                Ok(Err(Outcome::Negative))
            }
            _ => Err(e),
        },
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Prop(cmd) => prop(g, cmd),
        Command::Solve { graph, props, all } => solve(g, graph, props, *all),
        Command::Unique(cmd) => unique(g, cmd),
        Command::Gadget { kind, pair, verify, out } => gadget(g, *kind, pair, *verify && !g.no_verify, out.as_deref()),
        Command::Reduce { hypergraph, pair, out } => reduce(g, hypergraph, pair, out.as_deref()),
        Command::Certify { graph, colouring, map } => certify(g, graph, colouring, map),
        Command::Sweep(SweepCommand::Equivalence { max_vertices, max_edges, pair }) => {
            sweep(g, *max_vertices, *max_edges, pair)
        }
    }
}

fn property_json(p: &Property) -> serde_json::Value {
    json!({
        "name": p.name(),
        "forbidden": p.forbidden_graph6(),
        "additive": p.is_additive(),
        "definition": p.to_definition(),
    })
}

fn prop(g: &Global, cmd: &PropCommand) -> Result<Outcome> {
    match cmd {
        PropCommand::Check { prop, graph } => {
            let p = input::property(prop)?;
            let h = input::graph(graph)?;
            let violation = p.first_violation(&h);
            if g.json {
                print_json(&json!({
                    "property": p.name(),
                    "satisfies": violation.is_none(),
                    "forbidden": violation.as_ref().map(|(i, _)| io::to_graph6(&p.forbidden()[*i])),
                    "witness": violation.as_ref().map(|(_, w)| w),
                }))?;
            } else {
                match &violation {
                    None => println!("graph satisfies {}", p.name()),
                    Some((i, w)) => println!(
                        "contains forbidden {} on vertices {:?}",
                        input::describe(&p.forbidden()[*i]),
                        w
                    ),
                }
            }
            Ok(outcome(violation.is_none()))
        }
        PropCommand::Intersect { a, b } => {
            let p = input::property(a)?.intersect(&input::property(b)?);
            if g.json {
                print_json(&property_json(&p))?;
            } else {
                print!("{}", p.to_definition());
            }
            Ok(Outcome::Positive)
        }
        PropCommand::Complement { prop } => {
            let p = input::property(prop)?.complement();
            if g.json {
                print_json(&property_json(&p))?;
            } else {
                print!("{}", p.to_definition());
            }
            Ok(Outcome::Positive)
        }
    }
}

fn solve(g: &Global, graph: &str, props: &[String], all: bool) -> Result<Outcome> {
    let h = input::graph(graph)?;
    let props: Vec<Property> = props.iter().map(|s| input::property(s)).collect::<Result<_>>()?;
    if all {
        let limits = Limits { cap: g.cap.map(|c| c as usize), ..Limits::default() };
        let found = enumerate_partitions_with(&h, &props, &limits)?;
        let docs: Vec<PartitionDocument> = found.iter().map(|p| PartitionDocument::new(p, &props)).collect();
        if g.json {
            print_json(&serde_json::to_value(&docs)?)?;
        } else {
            println!("{} partition(s)", docs.len());
            for d in &docs {
                println!("{}", serde_json::to_string(&d.parts)?);
            }
        }
        return Ok(outcome(!docs.is_empty()));
    }
    let found = find_partition(&h, &props)?;
    match &found {
        Some(p) => {
            let doc = PartitionDocument::new(p, &props);
            if g.json {
                print_json(&serde_json::to_value(&doc)?)?;
            } else {
                println!("colourable");
                for (name, part) in doc.properties.iter().zip(&doc.parts) {
                    println!("{name}: {part:?}");
                }
            }
        }
        None if g.json => print_json(&serde_json::Value::Null)?,
        None => println!("not colourable"),
    }
    Ok(outcome(found.is_some()))
}

fn unique(g: &Global, cmd: &UniqueCommand) -> Result<Outcome> {
    match cmd {
        UniqueCommand::Check { graph, props } => {
            let h = input::graph(graph)?;
            let props = input::properties(props)?;
            let report = check_strongly_unique(&h, &props)?;
            if g.json {
                print_json(&serde_json::to_value(&report)?)?;
            } else if report.is_strongly_unique {
                println!("strongly unique ({} partition(s) seen)", report.partitions_seen);
            } else if report.canonical_partition.is_none() {
                println!("not strongly unique: no valid partition");
            } else {
                let w: Vec<_> = report.witnesses.iter().map(|p| p.parts()).collect();
                println!("not strongly unique: {:?} and {:?}", w[0], w[1]);
            }
            Ok(outcome(report.is_strongly_unique))
        }
        UniqueCommand::Search { props } => {
            let props = input::properties(props)?;
            let found = search_unique(&props, g.max_n as usize, true)?;
            match &found {
                Some((h, p)) => {
                    let doc = PartitionDocument::new(p, &props);
                    if g.json {
                        print_json(&json!({ "graph6": io::to_graph6(h), "order": h.order(), "partition": doc }))?;
                    } else {
                        println!("{}", io::to_graph6(h));
                        for (name, part) in doc.properties.iter().zip(&doc.parts) {
                            println!("{name}: {part:?}");
                        }
                    }
                }
                None if g.json => print_json(&serde_json::Value::Null)?,
                None => println!("none on at most {} vertices", g.max_n),
            }
            Ok(outcome(found.is_some()))
        }
    }
}

fn sidecar(gadget: &PortedGadget, kind: &str, verified: bool, report: serde_json::Value) -> serde_json::Value {
    json!({
        "kind": kind,
        "status": if verified { "verified" } else { "UNVERIFIED" },
        "order": gadget.graph.order(),
        "ports": gadget.ports,
        "anchors": gadget.anchors,
        "pins": gadget.pins,
        "report": report,
    })
}

fn gadget(g: &Global, kind: GadgetKind, pair: &str, verify: bool, out: Option<&Path>) -> Result<Outcome> {
    let set = match load_gadgets(g, pair, verify)? {
        Ok(s) => s,
        Err(o) => return Ok(o),
    };
    let (gadget, name, report) = match kind {
        GadgetKind::Replicator => (&set.replicator, "replicator", serde_json::to_value(&set.replicator_report)?),
        GadgetKind::Pincushion => (&set.cushion, "pincushion", serde_json::to_value(&set.cushion_report)?),
    };
    let side = sidecar(gadget, name, set.is_verified(), report);
    let g6 = io::to_graph6(&gadget.graph);
    match out {
        Some(path) => {
            let side_path = path.with_extension("json");
            fs::write(path, format!("{g6}\n")).with_context(|| format!("writing {}", path.display()))?;
            fs::write(&side_path, serde_json::to_string_pretty(&side)?)
                .with_context(|| format!("writing {}", side_path.display()))?;
            if g.json {
                print_json(&json!({ "graph": path, "sidecar": side_path, "status": side["status"] }))?;
            } else {
                println!("wrote {} and {} ({})", path.display(), side_path.display(), side["status"].as_str().unwrap_or(""));
            }
        }
        None if g.json => print_json(&json!({ "graph6": g6, "sidecar": side }))?,
        None => {
            println!("{g6}");
            println!("{name}: {} vertices, {}", gadget.graph.order(), side["status"].as_str().unwrap_or(""));
            for (port, v) in &gadget.ports {
                println!("  {port} = {v}");
            }
        }
    }
    Ok(Outcome::Positive)
}

fn reduce(g: &Global, hyp: &Path, pair: &str, out: Option<&Path>) -> Result<Outcome> {
    let text = fs::read_to_string(hyp).with_context(|| format!("reading {}", hyp.display()))?;
    let h = parse_hypergraph(&text)?;
    if let Some(w) = h.regime_warning() {
        eprintln!("warning: {w}");
    }
    let set = match load_gadgets(g, pair, !g.no_verify)? {
        Ok(s) => s,
        Err(o) => return Ok(o),
    };
    let red = reduction::reduce(&h, &set)?;
    let side = ReductionSidecar {
        properties: [set.p.to_definition(), set.q.to_definition()],
        map: red.map,
    };
    let g6 = io::to_graph6(&red.graph);
    let status = if side.map.verified { "verified" } else { "UNVERIFIED" };
    match out {
        Some(path) => {
            let map_path = path.with_extension("map.json");
            fs::write(path, format!("{g6}\n")).with_context(|| format!("writing {}", path.display()))?;
            fs::write(&map_path, serde_json::to_string_pretty(&side)?)
                .with_context(|| format!("writing {}", map_path.display()))?;
            if g.json {
                print_json(&json!({ "graph": path, "map": map_path, "order": red.graph.order(), "status": status }))?;
            } else {
                println!(
                    "wrote {} ({} vertices, gadgets {status}) and {}",
                    path.display(),
                    red.graph.order(),
                    map_path.display()
                );
            }
        }
        None if g.json => print_json(&json!({ "graph6": g6, "sidecar": side }))?,
        None => println!("{g6}"),
    }
    Ok(Outcome::Positive)
}

fn certify(g: &Global, graph: &str, colouring: &Path, map: &Path) -> Result<Outcome> {
    let h = input::graph(graph)?;
    let side: ReductionSidecar = serde_json::from_str(
        &fs::read_to_string(map).with_context(|| format!("reading {}", map.display()))?,
    )
    .with_context(|| format!("parsing certificate map {}", map.display()))?;
    let props = side
        .properties
        .iter()
        .map(|d| Property::parse(d))
        .collect::<Result<Vec<_>, _>>()
        .context("certificate map holds an unreadable property")?;
    let doc: PartitionDocument = serde_json::from_str(
        &fs::read_to_string(colouring).with_context(|| format!("reading {}", colouring.display()))?,
    )
    .with_context(|| format!("parsing colouring {}", colouring.display()))?;
    if doc.parts.len() != props.len() {
        bail!("colouring has {} parts, the map's property pair needs {}", doc.parts.len(), props.len());
    }
    let partition = doc.to_partition(h.order())?;
    match lift_certificate(&side.map, &h, &props, &partition) {
        Ok(u) => {
            if g.json {
                print_json(&json!({ "valid": true, "certificate": u }))?;
            } else {
                println!("certificate U = {u:?}");
            }
            Ok(Outcome::Positive)
        }
        Err(e @ (ReductionError::InvalidColouring { .. } | ReductionError::CertificateViolation { .. })) => {
            if g.json {
                let detail = match &e {
                    ReductionError::CertificateViolation { edge, vertices, count, expected } => {
                        json!({ "edge": edge, "vertices": vertices, "count": count, "expected": expected })
                    }
                    ReductionError::InvalidColouring { part, witness } => json!({ "part": part, "witness": witness }),
                    _ => serde_json::Value::Null,
                };
                print_json(&json!({ "valid": false, "error": e.to_string(), "detail": detail }))?;
            } else {
                println!("validation failed: {e}");
            }
            Ok(Outcome::Negative)
        }
        Err(e) => Err(e.into()),
    }
}

fn sweep(g: &Global, max_vertices: usize, max_edges: usize, pair: &str) -> Result<Outcome> {
    let set = match load_gadgets(g, pair, !g.no_verify)? {
        Ok(s) => s,
        Err(o) => return Ok(o),
    };
    let mut instances = enumerate_hypergraphs(max_vertices, max_edges, set.params.r(), set.params.p_count);
    if let Some(seed) = g.seed {
        instances.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let reports = reduction::sweep(&instances, &set)?;
    let agree = reports.iter().all(|r| r.agrees());
    if g.json {
        print_json(&json!({ "instances": reports.len(), "all_agree": agree, "verified": set.is_verified(), "reports": reports }))?;
    } else {
        for r in &reports {
            let edges: Vec<String> = r.hypergraph.edges.iter().map(|e| format!("{e:?}")).collect();
            println!(
                "{} n={} edges=[{}] satisfiable={} colourable={} round_trip={}",
                if r.agrees() { "ok  " } else { "FAIL" },
                r.hypergraph.n_vertices,
                edges.join(" "),
                r.brute_force.is_some(),
                r.colourable,
                r.round_trip.map_or("-".to_string(), |b| b.to_string()),
            );
        }
        println!(
            "{} instance(s), {}{}",
            reports.len(),
            if agree { "all agree" } else { "DISAGREEMENT" },
            if set.is_verified() { "" } else { " (gadgets UNVERIFIED)" }
        );
    }
    Ok(outcome(agree))
}
