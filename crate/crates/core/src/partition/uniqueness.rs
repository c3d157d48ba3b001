use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{for_each_partition, Limits, OrderedPartition};
use crate::error::SolverError;
use crate::graph::{Graph, GraphEnumerator, VertexSet, DEFAULT_ENUMERATION_BOUND};
use crate::properties::Property;

/// Outcome of a strong-uniqueness check.
///
/// A graph is strongly uniquely partitionable when every valid ordered
/// partition `(U₁, …, Uₙ)` is the canonical one `(V₁, …, Vₙ)` re-indexed by a
/// permutation `φ` with `Vᵢ = U_φ(i)`, where `φ` only moves indices between
/// slots carrying equal properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub is_strongly_unique: bool,
    /// The first valid partition in search order, when any exists.
    pub canonical_partition: Option<OrderedPartition>,
    /// Two partitions not related by an admissible `φ`, when not unique.
    pub witnesses: Vec<OrderedPartition>,
    /// `φ` for every further partition met, `φ[i] = j` meaning `Vᵢ = Uⱼ`.
    pub permutation_log: Vec<Vec<usize>>,
    pub partitions_seen: usize,
}

/// A permutation `φ` with `canonical[i] = other[φ(i)]` and
/// `props[i] == props[φ(i)]`, if one exists.
pub(crate) fn admissible_permutation(
    canonical: &[VertexSet],
    other: &[VertexSet],
    props: &[Property],
) -> Option<Vec<usize>> {
    let k = canonical.len();
    let mut phi = vec![usize::MAX; k];
    let mut taken = vec![false; k];
    fn assign(
        i: usize,
        canonical: &[VertexSet],
        other: &[VertexSet],
        props: &[Property],
        phi: &mut [usize],
        taken: &mut [bool],
    ) -> bool {
        if i == canonical.len() {
            return true;
        }
        for j in 0..canonical.len() {
            if !taken[j] && canonical[i] == other[j] && props[i] == props[j] {
                taken[j] = true;
                phi[i] = j;
                if assign(i + 1, canonical, other, props, phi, taken) {
                    return true;
                }
                taken[j] = false;
            }
        }
        false
    }
    assign(0, canonical, other, props, &mut phi, &mut taken).then_some(phi)
}

pub fn check_strongly_unique(g: &Graph, props: &[Property]) -> Result<UniquenessReport, SolverError> {
    check_strongly_unique_with(g, props, &Limits::default())
}

/// Enumerates partitions until a second, inequivalent one turns up. The
/// ceiling in `limits` applies to `parts^vertices` as for uncapped
/// enumeration.
pub fn check_strongly_unique_with(
    g: &Graph,
    props: &[Property],
    limits: &Limits,
) -> Result<UniquenessReport, SolverError> {
    if props.is_empty() {
        return Err(SolverError::NoProperties);
    }
    limits.check_ceiling(props.len(), g.order())?;
    let mut canonical: Option<(OrderedPartition, Vec<VertexSet>)> = None;
    let mut witnesses = Vec::new();
    let mut log = Vec::new();
    let seen = for_each_partition(g, props, None, limits.node_budget, |p| {
        let parts = p.parts();
        match &canonical {
            None => {
                canonical = Some((p, parts));
                ControlFlow::Continue(())
            }
            Some((c, cparts)) => match admissible_permutation(cparts, &parts, props) {
                Some(phi) => {
                    log.push(phi);
                    ControlFlow::Continue(())
                }
                None => {
                    witnesses = vec![c.clone(), p];
                    ControlFlow::Break(())
                }
            },
        }
    })?;
    Ok(UniquenessReport {
        is_strongly_unique: canonical.is_some() && witnesses.is_empty(),
        canonical_partition: canonical.map(|(c, _)| c),
        witnesses,
        permutation_log: log,
        partitions_seen: seen,
    })
}

/// The first graph, in enumeration order over graphs on at most `max_n`
/// vertices, that is strongly uniquely partitionable (with a non-empty last
/// part of the canonical partition when `require_last_nonempty`).
///
/// Only members of the product are enumerated: the product of
/// induced-hereditary properties is induced-hereditary, and graphs outside it
/// have no partition at all.
pub fn search_unique(
    props: &[Property],
    max_n: usize,
    require_last_nonempty: bool,
) -> Result<Option<(Graph, OrderedPartition)>, SolverError> {
    if props.is_empty() {
        return Err(SolverError::NoProperties);
    }
    let colourable = |g: &Graph| {
        super::find_partition(g, props)
            .map(|p| p.is_some())
            .unwrap_or(false)
    };
    let last = props.len() - 1;
    for g in GraphEnumerator::new(max_n, DEFAULT_ENUMERATION_BOUND, colourable)? {
        let report = check_strongly_unique_with(&g, props, &Limits { ceiling: u64::MAX, ..Limits::default() })?;
        if !report.is_strongly_unique {
            continue;
        }
        let partition = report.canonical_partition.expect("unique implies a partition");
        if require_last_nonempty && partition.part(last).is_empty() {
            continue;
        }
        return Ok(Some((g, partition)));
    }
    Ok(None)
}
