#![allow(dead_code)]

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use plbm::graph::{detect_crossings, validate_drawing, Drawing, Graph, Point, Side, Vertex};

pub fn graph(ids: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::from_parts(ids.iter().map(|v| Vertex::new(*v)), edges.iter().copied()).unwrap()
}

pub fn drawing(points: &[(i64, i64)]) -> Drawing {
    Drawing::new(points.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
}

/// C4 on the corners of a square with u1-v1 and u2-v2 as the crossing diagonals.
pub fn c4_crossed() -> (Graph, Drawing) {
    (
        graph(&["u1", "u2", "v1", "v2"], &[("u1", "v1"), ("v1", "u2"), ("u2", "v2"), ("v2", "u1")]),
        drawing(&[(0, 0), (2, 0), (2, 2), (0, 2)]),
    )
}

/// C6 whose edge 0-1 is crossed by both 2-3 and 4-5.
pub fn c6_double_crossed() -> (Graph, Drawing) {
    (
        graph(
            &["0", "1", "2", "3", "4", "5"],
            &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "0")],
        ),
        drawing(&[(0, 0), (10, 0), (8, -2), (7, 2), (3, 3), (2, -2)]),
    )
}

pub fn c4_planar() -> (Graph, Drawing) {
    (
        graph(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
        drawing(&[(0, 0), (2, 0), (2, 2), (0, 2)]),
    )
}

/// G(n, p) with ids `v0..`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(Vertex::new(format!("v{i}"))).unwrap();
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Random planar bipartite graph: random integer points with random sides,
/// edges between sides added greedily while the drawing stays crossing-free.
pub fn random_planar_bipartite(rng: &mut ChaCha8Rng, n: usize) -> (Graph, Drawing) {
    loop {
        let mut g = Graph::new();
        let mut pts = Vec::new();
        for i in 0..n {
            let side = if rng.gen_bool(0.5) { Side::A } else { Side::B };
            g.add_vertex(Vertex::new(format!("p{i}")).with_side(side)).unwrap();
            pts.push(Point::new(
                BigRational::from_integer(rng.gen_range(0..1000).into()),
                BigRational::from_integer(rng.gen_range(0..1000).into()),
            ));
        }
        let d = Drawing::new(pts);
        if validate_drawing(&g, &d).is_err() {
            continue;
        }
        let attempts = 3 * n;
        for _ in 0..attempts {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b || g.vertex(a).side == g.vertex(b).side || g.has_edge(a, b) {
                continue;
            }
            let mut trial = g.clone();
            trial.add_edge(a, b).unwrap();
            if matches!(detect_crossings(&trial, &d), Ok(cs) if cs.k() == 0) {
                g = trial;
            }
        }
        return (g, d);
    }
}
