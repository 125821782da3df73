//! Weight elimination: MP(G) with vertices tagged `x` is recovered from the
//! unweighted-at-`x` graphs `G_i`, where every `x`-vertex gets `i` pendant
//! neighbors, by interpolating `f(y) = sum_j a_j y^j` at nodes `i + 1`.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::ReductionError;
use crate::graph::{Graph, Vertex};
use crate::matching::{matching_polynomial_with, EngineConfig, WeightAssignment};
use crate::poly::vandermonde_solve;
use crate::ring::{IntDivRing, Ring};

/// Each vertex tagged `x` is retagged "1" and gets `i` fresh degree-1 neighbors.
pub fn build_gi(g: &Graph, x: &str, i: usize) -> Result<Graph, ReductionError> {
    let xs: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.vertex(v).weight == x).collect();
    if x == "1" || xs.is_empty() {
        return Err(ReductionError::UnknownTag(x.to_string()));
    }
    let mut out = g.map_weights(|v| if v.weight == x { "1".into() } else { v.weight.clone() });
    for &v in &xs {
        for j in 1..=i {
            let base = format!("{}~{j}", g.vertex(v).id);
            let mut id = base.clone();
            let mut n = 1;
            while out.vertex_index(&id).is_some() {
                id = format!("{base}_{n}");
                n += 1;
            }
            let mut leaf = Vertex::new(id);
            leaf.side = g.vertex(v).side.map(|s| s.opposite());
            let p = out.add_vertex(leaf)?;
            out.add_edge(v, p)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct InterpolationRun<R> {
    pub tag: String,
    /// Ids of the vertices tagged `tag`.
    pub x_vertices: Vec<String>,
    /// `G_1 .. G_{m+1}`.
    pub graphs: Vec<Graph>,
    /// `MP(G_i)`, in the same order.
    pub values: Vec<R>,
    /// `a_0 .. a_m`.
    pub coefficients: Vec<R>,
}

impl<R: Ring> InterpolationRun<R> {
    pub fn m(&self) -> usize {
        self.x_vertices.len()
    }

    /// `f(y)` by Horner's rule.
    pub fn evaluate(&self, y: &R) -> R {
        self.coefficients
            .iter()
            .rev()
            .fold(R::zero_elem(), |acc, a| acc.mul(y).add(a))
    }

    /// Whether every `MP(G_i)` equals `f(i + 1)`.
    pub fn consistent(&self) -> bool {
        self.values.iter().enumerate().all(|(k, v)| {
            let node = R::from_integer(&BigInt::from(k + 2));
            self.evaluate(&node).sub(v).is_exact_zero()
        })
    }
}

pub fn eliminate_weight<R: IntDivRing>(
    g: &Graph,
    w: &WeightAssignment<R>,
    x: &str,
    cfg: EngineConfig,
) -> Result<InterpolationRun<R>, ReductionError> {
    let x_vertices: Vec<String> = g
        .vertices()
        .iter()
        .filter(|v| v.weight == x)
        .map(|v| v.id.clone())
        .collect();
    let m = x_vertices.len();
    let graphs = (1..=m + 1).map(|i| build_gi(g, x, i)).collect::<Result<Vec<_>, _>>()?;
    let values = graphs
        .par_iter()
        .map(|gi| matching_polynomial_with(gi, w, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let points: Vec<(BigInt, R)> = values
        .iter()
        .enumerate()
        .map(|(k, v)| (BigInt::from(k + 2), v.clone()))
        .collect();
    let coefficients = vandermonde_solve(&points)?;
    let run = InterpolationRun { tag: x.to_string(), x_vertices, graphs, values, coefficients };
    if !run.consistent() {
        return Err(ReductionError::InterpolationMismatch(x.to_string()));
    }
    Ok(run)
}

/// MP(G) with the listed tags eliminated one after another, so that the
/// innermost computations only ever see the remaining tags. With every tag
/// listed, only unweighted matching polynomials are computed.
pub fn eliminate_chain<R: IntDivRing>(
    g: &Graph,
    tags: &[&str],
    values: &WeightAssignment<R>,
    cfg: EngineConfig,
) -> Result<R, ReductionError> {
    let Some((&x, rest)) = tags.split_first() else {
        return Ok(matching_polynomial_with(g, values, cfg)?);
    };
    if g.vertices().iter().all(|v| v.weight != x) {
        return eliminate_chain(g, rest, values, cfg);
    }
    let y = values.get(x).ok_or_else(|| ReductionError::UnknownTag(x.to_string()))?;
    let m = g.vertices().iter().filter(|v| v.weight == x).count();
    let points = (1..=m + 1)
        .into_par_iter()
        .map(|i| {
            let gi = build_gi(g, x, i)?;
            Ok((BigInt::from(i + 1), eliminate_chain(&gi, rest, values, cfg)?))
        })
        .collect::<Result<Vec<_>, ReductionError>>()?;
    let coefficients = vandermonde_solve(&points)?;
    Ok(coefficients.iter().rev().fold(R::zero_elem(), |acc, a| acc.mul(&y).add(a)))
}
