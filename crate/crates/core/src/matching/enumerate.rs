//! Brute-force matching enumeration, used as the reference oracle.

use super::MatchingError;
use crate::graph::Graph;
use crate::ring::Ring;

pub const DEFAULT_ORACLE_BOUND: usize = 20;

fn check_bound(g: &Graph, bound: usize) -> Result<(), MatchingError> {
    if g.vertex_count() > bound {
        Err(MatchingError::TooLargeForOracle { n: g.vertex_count(), bound })
    } else {
        Ok(())
    }
}

/// Calls `f` once per matching (as sorted edge indices), the empty matching included.
pub fn for_each_matching(
    g: &Graph,
    bound: usize,
    mut f: impl FnMut(&[usize]),
) -> Result<(), MatchingError> {
    check_bound(g, bound)?;
    fn rec(
        g: &Graph,
        next: usize,
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        f(chosen);
        for e in next..g.edge_count() {
            let (a, b) = g.edges()[e];
            if covered[a] || covered[b] {
                continue;
            }
            covered[a] = true;
            covered[b] = true;
            chosen.push(e);
            rec(g, e + 1, covered, chosen, f);
            chosen.pop();
            covered[a] = false;
            covered[b] = false;
        }
    }
    let mut covered = vec![false; g.vertex_count()];
    rec(g, 0, &mut covered, &mut Vec::new(), &mut f);
    Ok(())
}

pub fn enumerate_matchings(g: &Graph, bound: usize) -> Result<Vec<Vec<usize>>, MatchingError> {
    let mut out = Vec::new();
    for_each_matching(g, bound, |m| out.push(m.to_vec()))?;
    Ok(out)
}

/// The defining sum: over matchings, the product of uncovered vertex weights.
pub fn mp_by_enumeration<R: Ring>(g: &Graph, weights: &[R], bound: usize) -> Result<R, MatchingError> {
    let mut acc = R::zero_elem();
    let mut covered = vec![false; g.vertex_count()];
    for_each_matching(g, bound, |m| {
        covered.iter_mut().for_each(|c| *c = false);
        for &e in m {
            let (a, b) = g.edges()[e];
            covered[a] = true;
            covered[b] = true;
        }
        let mut t = R::one_elem();
        for (v, w) in weights.iter().enumerate() {
            if !covered[v] {
                t = t.mul(w);
            }
        }
        acc = acc.add(&t);
    })?;
    Ok(acc)
}
