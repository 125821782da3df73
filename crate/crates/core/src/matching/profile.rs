//! Boundary profiles: for each in/out pattern of a set of terminal edges,
//! the weighted sum over matchings of the gadget that use exactly the "in"
//! edges. Terminal vertices belong to the environment and contribute no weight.

use super::{Engine, EngineConfig, MatchingError, WeightAssignment};
use crate::graph::Graph;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub terminal: usize,
    pub internal: usize,
}

#[derive(Debug, Clone)]
pub struct BoundaryProfile<R> {
    /// `(terminal id, internal id)` per boundary edge.
    pub edges: Vec<(String, String)>,
    /// Indexed by pattern bitmask; bit `i` set means edge `i` is in the matching.
    pub values: Vec<R>,
}

impl<R: Ring> BoundaryProfile<R> {
    pub fn value(&self, pattern: usize) -> &R {
        &self.values[pattern]
    }

    /// Pattern bitmask from per-edge flags.
    pub fn pattern(ins: &[bool]) -> usize {
        ins.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| 1 << i)
            .sum()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn boundary_profile<R: Ring>(
    g: &Graph,
    w: &WeightAssignment<R>,
    boundary: &[(&str, &str)],
) -> Result<BoundaryProfile<R>, MatchingError> {
    let mut edges = Vec::with_capacity(boundary.len());
    for &(t, i) in boundary {
        let terminal = g
            .vertex_index(t)
            .ok_or_else(|| MatchingError::BadBoundary(format!("unknown terminal `{t}`")))?;
        let internal = g
            .vertex_index(i)
            .ok_or_else(|| MatchingError::BadBoundary(format!("unknown vertex `{i}`")))?;
        edges.push(BoundaryEdge { terminal, internal });
    }
    let weights: Vec<R> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, vert)| {
            if edges.iter().any(|e| e.terminal == v) {
                Ok(R::one_elem())
            } else {
                w.get(&vert.weight)
                    .ok_or_else(|| MatchingError::UnmappedTag(vert.weight.clone()))
            }
        })
        .collect::<Result<_, _>>()?;
    boundary_profile_with(g, &weights, &edges, EngineConfig::default())
}

pub fn boundary_profile_with<R: Ring>(
    g: &Graph,
    weights: &[R],
    boundary: &[BoundaryEdge],
    cfg: EngineConfig,
) -> Result<BoundaryProfile<R>, MatchingError> {
    for (k, e) in boundary.iter().enumerate() {
        let t = &g.vertex(e.terminal).id;
        if !g.has_edge(e.terminal, e.internal) {
            return Err(MatchingError::BadBoundary(format!(
                "`{t}`-`{}` is not an edge",
                g.vertex(e.internal).id
            )));
        }
        if g.degree(e.terminal) != 1 {
            return Err(MatchingError::BadBoundary(format!("terminal `{t}` has degree {}", g.degree(e.terminal))));
        }
        if boundary[..k].iter().any(|o| o.terminal == e.terminal) {
            return Err(MatchingError::BadBoundary(format!("terminal `{t}` used twice")));
        }
        if boundary.iter().any(|o| o.internal == e.terminal) {
            return Err(MatchingError::BadBoundary(format!("terminal `{t}` is also internal")));
        }
    }
    let n = g.vertex_count();
    let mut engine = Engine::new(n, g.edges(), weights, cfg)?;
    let mut values = Vec::with_capacity(1 << boundary.len());
    for pattern in 0..1usize << boundary.len() {
        let mut keep = vec![true; n];
        for e in boundary {
            keep[e.terminal] = false;
        }
        let mut clash = false;
        for (i, e) in boundary.iter().enumerate() {
            if pattern >> i & 1 == 1 {
                if !keep[e.internal] {
                    clash = true;
                }
                keep[e.internal] = false;
            }
        }
        values.push(if clash { R::zero_elem() } else { engine.mp_induced(&keep)? });
    }
    Ok(BoundaryProfile {
        edges: boundary
            .iter()
            .map(|e| (g.vertex(e.terminal).id.clone(), g.vertex(e.internal).id.clone()))
            .collect(),
        values,
    })
}
