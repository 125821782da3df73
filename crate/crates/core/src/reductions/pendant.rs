//! Matchings of a bipartite G versus maximum matchings of G with a pendant
//! edge on every vertex of the smaller class.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::ReductionError;
use crate::graph::{check_bipartite, pendant_extension, Graph, GraphError, PendantExtension};
use crate::matching::{
    count_matchings, enumerate_matchings, maximum_matching_size, size_distribution, EngineConfig,
    DEFAULT_ORACLE_BOUND,
};

#[derive(Debug, Clone)]
pub struct BijectionCheck {
    pub matchings: usize,
    pub maximum_matchings: usize,
}

#[derive(Debug, Clone)]
pub struct PendantRun {
    pub extension: PendantExtension,
    /// `M(G)` from the engine.
    pub matchings: BigInt,
    /// `MM(G')`.
    pub maximum_matchings: BigInt,
    /// Maximum matching size of G', from the size distribution.
    pub nu: usize,
    /// Present when G' is small enough to enumerate.
    pub bijection: Option<BijectionCheck>,
}

type EdgeSet = BTreeSet<usize>;

/// Drops the pendant edges of a matching of G'.
fn phi(m: &EdgeSet, original_edges: usize) -> EdgeSet {
    m.iter().copied().filter(|&e| e < original_edges).collect()
}

/// Adds the pendant edge of every U-vertex left uncovered by `m`.
fn phi_prime(ext: &PendantExtension, g: &Graph, m: &EdgeSet) -> EdgeSet {
    let mut covered = vec![false; g.vertex_count()];
    for &e in m {
        let (a, b) = g.edges()[e];
        covered[a] = true;
        covered[b] = true;
    }
    let mut out = m.clone();
    for &(u, p) in &ext.pendants {
        if !covered[u] {
            out.insert(ext.graph.edge_index(u, p).expect("pendant edge exists"));
        }
    }
    out
}

fn check_bijection(g: &Graph, ext: &PendantExtension) -> Result<BijectionCheck, ReductionError> {
    let ms: BTreeSet<EdgeSet> = enumerate_matchings(g, DEFAULT_ORACLE_BOUND)?
        .into_iter()
        .map(|m| m.into_iter().collect())
        .collect();
    let all_prime = enumerate_matchings(&ext.graph, DEFAULT_ORACLE_BOUND)?;
    let top = all_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mms: BTreeSet<EdgeSet> = all_prime
        .into_iter()
        .filter(|m| m.len() == top)
        .map(|m| m.into_iter().collect())
        .collect();
    let e = g.edge_count();
    for m in &ms {
        let image = phi_prime(ext, g, m);
        if !mms.contains(&image) {
            return Err(ReductionError::BijectionMismatch(format!("phi' of {m:?} is not a maximum matching")));
        }
        if &phi(&image, e) != m {
            return Err(ReductionError::BijectionMismatch(format!("phi(phi'({m:?})) differs")));
        }
    }
    for m in &mms {
        let image = phi(m, e);
        if !ms.contains(&image) {
            return Err(ReductionError::BijectionMismatch(format!("phi of {m:?} is not a matching of G")));
        }
        if &phi_prime(ext, g, &image) != m {
            return Err(ReductionError::BijectionMismatch(format!("phi'(phi({m:?})) differs")));
        }
    }
    Ok(BijectionCheck { matchings: ms.len(), maximum_matchings: mms.len() })
}

pub fn count_matchings_via_pendant(g: &Graph, cfg: EngineConfig) -> Result<PendantRun, ReductionError> {
    let bip = check_bipartite(g).map_err(|e| match e {
        GraphError::OddCycle(_) => ReductionError::NotBipartite,
        e => e.into(),
    })?;
    let extension = pendant_extension(g, &bip)?;
    let dist = size_distribution(&extension.graph, cfg)?;
    let nu = dist.nu();
    let augmenting = maximum_matching_size(&extension.graph)?;
    if augmenting != nu {
        return Err(ReductionError::BijectionMismatch(format!(
            "size distribution gives nu = {nu}, augmenting paths give {augmenting}"
        )));
    }
    let bijection = if extension.graph.vertex_count() <= DEFAULT_ORACLE_BOUND {
        Some(check_bijection(g, &extension)?)
    } else {
        None
    };
    Ok(PendantRun {
        matchings: count_matchings(g)?,
        maximum_matchings: dist.maximum_count(),
        nu,
        bijection,
        extension,
    })
}
