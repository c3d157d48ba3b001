//! On-disk cache of forcing fixtures and verified gadgets, one JSON file per
//! (property pair, search bound).
//!
//! A cached fixture is re-checked for strong uniqueness when loaded. Cached
//! gadgets are rebuilt from the fixture and compared byte for byte with the
//! stored graph6; the stored witness colourings are then re-validated
//! instead of enumerating again.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use pqcol::gadgets::{PinCushionReport, ReplicatorReport, VerifyLimits};
use pqcol::graph::io;
use pqcol::partition::find_partition_extending;
use pqcol::{ForcingAnchors, GadgetSet, Graph, OrderedPartition, Property, PortedGadget};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StoredFixture {
    graph: String,
    partition: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StoredGadgets {
    replicator: String,
    cushion: String,
    replicator_report: ReplicatorReport,
    cushion_report: PinCushionReport,
    replicator_witnesses: Vec<Vec<usize>>,
    cushion_witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Entry {
    forbidden: [Vec<String>; 2],
    max_n: usize,
    fixture: Option<StoredFixture>,
    gadgets: Option<StoredGadgets>,
}

pub struct Fixtures {
    dir: Option<PathBuf>,
}

fn key(p: &Property, q: &Property, max_n: usize) -> String {
    let mut h = Sha256::new();
    for prop in [p, q] {
        for g6 in prop.forbidden_graph6() {
            h.update(g6.as_bytes());
            h.update(b"\n");
        }
        h.update(b"|");
    }
    h.update(max_n.to_string().as_bytes());
    hex::encode(h.finalize())
}

impl Fixtures {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Fixtures { dir }
    }

    fn path(&self, p: &Property, q: &Property, max_n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", key(p, q, max_n))))
    }

    fn load(&self, path: Option<&Path>) -> Option<Entry> {
        let text = fs::read_to_string(path?).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn store(&self, path: Option<&Path>, entry: &Entry) -> Result<()> {
        let Some(path) = path else { return Ok(()) };
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        fs::write(path, serde_json::to_string_pretty(entry)?).with_context(|| format!("writing {}", path.display()))
    }

    fn fresh_entry(p: &Property, q: &Property, max_n: usize) -> Entry {
        Entry {
            forbidden: [p.forbidden_graph6(), q.forbidden_graph6()],
            max_n,
            fixture: None,
            gadgets: None,
        }
    }

    /// The smallest forcing fixture for `(p, q)` within `max_n` vertices.
    pub fn anchors(&self, p: &Property, q: &Property, max_n: usize) -> Result<Option<ForcingAnchors>> {
        let path = self.path(p, q, max_n);
        let cached = self
            .load(path.as_deref())
            .filter(|e| e.forbidden == [p.forbidden_graph6(), q.forbidden_graph6()]);
        if let Some(entry) = &cached {
            match &entry.fixture {
                Some(f) => {
                    let g = io::from_graph6(&f.graph)?;
                    let part = OrderedPartition::new(2, f.partition.clone())?;
                    if let Ok(a) = ForcingAnchors::new(p, q, g, &part) {
                        return Ok(Some(a));
                    }
                }
                None => return Ok(None),
            }
        }
        let found = ForcingAnchors::search(p, q, max_n)?;
        let mut entry = Self::fresh_entry(p, q, max_n);
        entry.fixture = found.as_ref().map(|a| StoredFixture {
            graph: io::to_graph6(&a.g_pq),
            partition: a.partition().assignment().to_vec(),
        });
        self.store(path.as_deref(), &entry)?;
        Ok(found)
    }

    /// Gadgets for `(p, q)`, verified when `verify` is given. `None` when no
    /// fixture exists within `max_n` vertices.
    pub fn gadgets(
        &self,
        p: &Property,
        q: &Property,
        max_n: usize,
        verify: Option<&VerifyLimits>,
    ) -> Result<Option<GadgetSet>> {
        let Some(anchors) = self.anchors(p, q, max_n)? else {
            return Ok(None);
        };
        let Some(limits) = verify else {
            return Ok(Some(GadgetSet::build(p, q, anchors, None)?));
        };
        let path = self.path(p, q, max_n);
        let mut entry = self.load(path.as_deref()).unwrap_or_else(|| Self::fresh_entry(p, q, max_n));
        let mut set = GadgetSet::build(p, q, anchors, None)?;
        if let Some(stored) = &entry.gadgets {
            if cached_still_valid(&set, stored) {
                set.replicator_report = Some(stored.replicator_report.clone());
                set.cushion_report = Some(stored.cushion_report.clone());
                return Ok(Some(set));
            }
        }
        let set = GadgetSet::build(p, q, set.anchors, Some(limits))?;
        entry.gadgets = Some(StoredGadgets {
            replicator: io::to_graph6(&set.replicator.graph),
            cushion: io::to_graph6(&set.cushion.graph),
            replicator_report: set.replicator_report.clone().expect("verified"),
            cushion_report: set.cushion_report.clone().expect("verified"),
            replicator_witnesses: replicator_witnesses(&set)?,
            cushion_witnesses: cushion_witnesses(&set)?,
        });
        self.store(path.as_deref(), &entry)?;
        Ok(Some(set))
    }
}

fn anchor_fixed(g: &PortedGadget) -> Vec<Option<usize>> {
    let mut fixed = vec![None; g.graph.order()];
    if let Some(a) = g.anchors.first() {
        fixed[a.p_vertex] = Some(0);
    }
    fixed
}

fn replicator_witnesses(set: &GadgetSet) -> Result<Vec<Vec<usize>>> {
    let r = &set.replicator;
    let x = r.port("x")?;
    let mut out = Vec::new();
    for side in 0..2 {
        let mut fixed = anchor_fixed(r);
        fixed[x] = Some(side);
        if let Some(c) = find_partition_extending(&r.graph, &set.props(), Some(&fixed))? {
            out.push(c.assignment().to_vec());
        }
    }
    Ok(out)
}

fn cushion_witnesses(set: &GadgetSet) -> Result<Vec<Vec<usize>>> {
    let n = &set.cushion;
    let report = set.cushion_report.as_ref().expect("verified");
    let mut out = Vec::new();
    for pattern in &report.patterns {
        let mut fixed = anchor_fixed(n);
        for i in 0..set.params.r() {
            fixed[n.port(&format!("S[{i}]"))?] = Some(if pattern.contains(&i) { 0 } else { 1 });
        }
        if let Some(c) = find_partition_extending(&n.graph, &set.props(), Some(&fixed))? {
            out.push(c.assignment().to_vec());
        }
    }
    Ok(out)
}

fn valid_colourings(g: &Graph, props: &[Property], witnesses: &[Vec<usize>]) -> Option<Vec<OrderedPartition>> {
    witnesses
        .iter()
        .map(|w| {
            let c = OrderedPartition::new(2, w.clone()).ok()?;
            (w.len() == g.order() && c.is_valid(g, props)).then_some(c)
        })
        .collect()
}

/// Rebuilt gadgets match the stored graph6 and every stored witness is a
/// valid colouring realising what the stored report claims.
fn cached_still_valid(set: &GadgetSet, stored: &StoredGadgets) -> bool {
    if io::to_graph6(&set.replicator.graph) != stored.replicator || io::to_graph6(&set.cushion.graph) != stored.cushion {
        return false;
    }
    if !stored.replicator_report.holds() || !stored.cushion_report.holds() {
        return false;
    }
    let props = set.props();
    let Some(rep) = valid_colourings(&set.replicator.graph, &props, &stored.replicator_witnesses) else {
        return false;
    };
    let Ok(x) = set.replicator.port("x") else { return false };
    let sides: Vec<bool> = rep.iter().map(|c| c.part_of(x) == set.replicator.p_part(c)).collect();
    if !(sides.contains(&true) && sides.contains(&false)) {
        return false;
    }
    let Some(cush) = valid_colourings(&set.cushion.graph, &props, &stored.cushion_witnesses) else {
        return false;
    };
    let n = &set.cushion;
    let r = set.params.r();
    let patterns: std::collections::BTreeSet<Vec<usize>> = cush
        .iter()
        .map(|c| {
            let pp = n.p_part(c);
            (0..r)
                .filter(|&i| n.port(&format!("S[{i}]")).map_or(false, |v| c.part_of(v) == pp))
                .collect()
        })
        .collect();
    patterns == stored.cushion_report.patterns
}
