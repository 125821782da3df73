use super::MatchingError;
use crate::graph::{check_bipartite, Graph, Side};

/// Maximum matching size of a bipartite graph by augmenting paths. This is
/// independent of the polynomial engine and serves as a cross-check for ν.
pub fn maximum_matching_size(g: &Graph) -> Result<usize, MatchingError> {
    let bip = check_bipartite(g).map_err(|_| MatchingError::NotBipartite)?;
    let left = bip.class(Side::A);
    let mut mate: Vec<Option<usize>> = vec![None; g.vertex_count()];

    fn augment(g: &Graph, u: usize, seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for &v in g.neighbors(u) {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if mate[v].is_none_or(|w| augment(g, w, seen, mate)) {
                mate[v] = Some(u);
                mate[u] = Some(v);
                return true;
            }
        }
        false
    }

    let mut size = 0;
    for &u in &left {
        let mut seen = vec![false; g.vertex_count()];
        if augment(g, u, &mut seen, &mut mate) {
            size += 1;
        }
    }
    Ok(size)
}
