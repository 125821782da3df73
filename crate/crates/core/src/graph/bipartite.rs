use std::collections::VecDeque;

use super::{Graph, GraphError, Side};

/// A verified 2-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub sides: Vec<Side>,
}

impl Bipartition {
    pub fn class(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&v| self.sides[v] == side)
            .collect()
    }

    pub fn class_sizes(&self) -> (usize, usize) {
        let a = self.sides.iter().filter(|&&s| s == Side::A).count();
        (a, self.sides.len() - a)
    }

    pub fn side(&self, v: usize) -> Side {
        self.sides[v]
    }
}

/// BFS 2-coloring. Components follow any sides already stored on the
/// vertices; the result is re-verified by an edge scan.
pub fn check_bipartite(g: &Graph) -> Result<Bipartition, GraphError> {
    let n = g.vertex_count();
    let mut color: Vec<Option<Side>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];

    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Side::A);
        let mut component = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(cu.opposite());
                        parent[v] = u;
                        component.push(v);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => {
                        return Err(GraphError::OddCycle(odd_cycle(g, &parent, u, v)));
                    }
                    Some(_) => {}
                }
            }
        }
        let flip = component.iter().any(|&v| {
            g.vertex(v)
                .side
                .is_some_and(|s| Some(s) != color[v])
        });
        if flip {
            for &v in &component {
                color[v] = color[v].map(Side::opposite);
            }
        }
    }

    let sides: Vec<Side> = color.into_iter().map(|c| c.unwrap()).collect();
    for &(a, b) in g.edges() {
        assert_ne!(sides[a], sides[b], "2-coloring failed its own edge scan");
    }
    Ok(Bipartition { sides })
}

/// Closes the BFS-tree paths from `u` and `v` at their lowest common ancestor.
fn odd_cycle(g: &Graph, parent: &[usize], u: usize, v: usize) -> Vec<String> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    let lca = *pu.iter().find(|x| pv.contains(x)).expect("same component");
    let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let tail: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(tail.into_iter().rev());
    cycle.into_iter().map(|i| g.vertex(i).id.clone()).collect()
}
