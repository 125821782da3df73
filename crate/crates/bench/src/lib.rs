//! Fixtures shared by the benchmarks.

use plbm::graph::{Drawing, Graph, Point, Vertex};

/// n x m grid graph, ids `r{i}c{j}`.
pub fn grid(n: usize, m: usize) -> Graph {
    let id = |i: usize, j: usize| format!("r{i}c{j}");
    let mut g = Graph::new();
    for i in 0..n {
        for j in 0..m {
            g.add_vertex(Vertex::new(id(i, j))).unwrap();
        }
    }
    for i in 0..n {
        for j in 0..m {
            if i + 1 < n {
                g.add_edge_by_id(&id(i, j), &id(i + 1, j)).unwrap();
            }
            if j + 1 < m {
                g.add_edge_by_id(&id(i, j), &id(i, j + 1)).unwrap();
            }
        }
    }
    g
}

/// C4 drawn with its two diagonals crossing once.
pub fn c4_crossed() -> (Graph, Drawing) {
    let g = Graph::from_parts(
        ["u1", "u2", "v1", "v2"].map(Vertex::new),
        [("u1", "v1"), ("v1", "u2"), ("u2", "v2"), ("v2", "u1")],
    )
    .unwrap();
    let d = Drawing::new([(0, 0), (2, 0), (2, 2), (0, 2)].iter().map(|&(x, y)| Point::from_ints(x, y)).collect());
    (g, d)
}
