//! Straight-line drawings with exact rational coordinates, general-position
//! validation and all-pairs crossing detection.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point {
            x: BigRational::from_integer(x.into()),
            y: BigRational::from_integer(y.into()),
        }
    }

    fn sub(&self, o: &Point) -> (BigRational, BigRational) {
        (&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Vertex coordinates, indexed like the graph's vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Drawing {
    pub points: Vec<Point>,
}

impl Drawing {
    pub fn new(points: Vec<Point>) -> Self {
        Drawing { points }
    }
}

/// Sign of the cross product (q - p) x (r - p).
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Ordering {
    let (ax, ay) = q.sub(p);
    let (bx, by) = r.sub(p);
    (ax * by - ay * bx).cmp(&BigRational::zero())
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dot(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// `p` lies strictly inside segment `ab`.
fn strictly_inside(a: &Point, b: &Point, p: &Point) -> bool {
    if orientation(a, b, p) != Ordering::Equal {
        return false;
    }
    let ab = b.sub(a);
    let ap = p.sub(a);
    let t = dot(&ap, &ab);
    t.is_positive() && t < dot(&ab, &ab)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    CoincidentVertices(String, String),
    VertexOnEdge {
        vertex: String,
        edge: (String, String),
    },
    CollinearOverlap((String, String), (String, String)),
    Concurrent {
        point: Point,
        edges: Vec<(String, String)>,
    },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::CoincidentVertices(a, b) => write!(f, "vertices {a} and {b} coincide"),
            Degeneracy::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex-on-edge: {vertex} lies inside {}-{}", edge.0, edge.1)
            }
            Degeneracy::CollinearOverlap(e, h) => {
                write!(f, "collinear overlap of {}-{} and {}-{}", e.0, e.1, h.0, h.1)
            }
            Degeneracy::Concurrent { point, edges } => {
                write!(f, "concurrent: {} segments meet at {point}", edges.len())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Edge indices, `edges.0 < edges.1`.
    pub edges: (usize, usize),
    pub point: Point,
    /// Position along each edge, measured from its first stored endpoint.
    pub params: (BigRational, BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossingSet {
    pub crossings: Vec<Crossing>,
    /// For every edge, indices into `crossings` sorted by parameter along the edge.
    pub per_edge: Vec<Vec<usize>>,
}

impl CrossingSet {
    pub fn k(&self) -> usize {
        self.crossings.len()
    }

    /// Parameter of crossing `c` along edge `e`.
    pub fn param(&self, c: usize, e: usize) -> &BigRational {
        let x = &self.crossings[c];
        if x.edges.0 == e {
            &x.params.0
        } else {
            &x.params.1
        }
    }
}

fn edge_ids(g: &Graph, e: usize) -> (String, String) {
    let (a, b) = g.edges()[e];
    (g.vertex(a).id.clone(), g.vertex(b).id.clone())
}

fn analyze(g: &Graph, d: &Drawing) -> Result<CrossingSet, GraphError> {
    let n = g.vertex_count();
    if d.points.len() != n {
        return Err(GraphError::DrawingSize {
            expected: n,
            got: d.points.len(),
        });
    }
    let degenerate = |k| Err(GraphError::DegenerateDrawing(k));
    let pts = &d.points;

    let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(n);
    for (i, p) in pts.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return degenerate(Degeneracy::CoincidentVertices(
                g.vertex(j).id.clone(),
                g.vertex(i).id.clone(),
            ));
        }
        seen.insert(p, i);
    }

    let edges = g.edges();
    let m = edges.len();

    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = edges[i];
            let (c, e) = edges[j];
            let (pa, pb, pc, pe) = (&pts[a], &pts[b], &pts[c], &pts[e]);
            if orientation(pa, pb, pc) != Ordering::Equal
                || orientation(pa, pb, pe) != Ordering::Equal
            {
                continue;
            }
            let overlap = strictly_inside(pa, pb, pc)
                || strictly_inside(pa, pb, pe)
                || strictly_inside(pc, pe, pa)
                || strictly_inside(pc, pe, pb);
            if overlap {
                return degenerate(Degeneracy::CollinearOverlap(edge_ids(g, i), edge_ids(g, j)));
            }
        }
    }

    for (ei, &(a, b)) in edges.iter().enumerate() {
        for v in 0..n {
            if v != a && v != b && strictly_inside(&pts[a], &pts[b], &pts[v]) {
                return degenerate(Degeneracy::VertexOnEdge {
                    vertex: g.vertex(v).id.clone(),
                    edge: edge_ids(g, ei),
                });
            }
        }
    }

    let mut crossings = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = edges[i];
            let (c, e) = edges[j];
            if a == c || a == e || b == c || b == e {
                continue;
            }
            let (p1, p2, q1, q2) = (&pts[a], &pts[b], &pts[c], &pts[e]);
            let o1 = orientation(p1, p2, q1);
            let o2 = orientation(p1, p2, q2);
            let o3 = orientation(q1, q2, p1);
            let o4 = orientation(q1, q2, p2);
            let proper = o1 != Ordering::Equal
                && o2 != Ordering::Equal
                && o1 != o2
                && o3 != Ordering::Equal
                && o4 != Ordering::Equal
                && o3 != o4;
            if !proper {
                continue;
            }
            let r = p2.sub(p1);
            let s = q2.sub(q1);
            let qp = q1.sub(p1);
            let denom = cross(&r, &s);
            let t = cross(&qp, &s) / &denom;
            let u = cross(&qp, &r) / &denom;
            let point = Point::new(&p1.x + &t * &r.0, &p1.y + &t * &r.1);
            crossings.push(Crossing {
                edges: (i, j),
                point,
                params: (t, u),
            });
        }
    }

    let mut by_point: HashMap<&Point, Vec<usize>> = HashMap::new();
    for (ci, c) in crossings.iter().enumerate() {
        by_point.entry(&c.point).or_default().push(ci);
    }
    if let Some((point, cs)) = by_point
        .iter()
        .filter(|(_, cs)| cs.len() > 1)
        .min_by_key(|(_, cs)| cs[0])
    {
        let mut es: Vec<usize> = cs
            .iter()
            .flat_map(|&c| [crossings[c].edges.0, crossings[c].edges.1])
            .collect();
        es.sort_unstable();
        es.dedup();
        return degenerate(Degeneracy::Concurrent {
            point: (*point).clone(),
            edges: es.into_iter().map(|e| edge_ids(g, e)).collect(),
        });
    }

    let mut per_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (ci, c) in crossings.iter().enumerate() {
        per_edge[c.edges.0].push(ci);
        per_edge[c.edges.1].push(ci);
    }
    let mut set = CrossingSet {
        crossings,
        per_edge: Vec::new(),
    };
    for (e, list) in per_edge.iter_mut().enumerate() {
        list.sort_by(|&x, &y| {
            let px = if set.crossings[x].edges.0 == e {
                &set.crossings[x].params.0
            } else {
                &set.crossings[x].params.1
            };
            let py = if set.crossings[y].edges.0 == e {
                &set.crossings[y].params.0
            } else {
                &set.crossings[y].params.1
            };
            px.cmp(py)
        });
    }
    set.per_edge = per_edge;
    Ok(set)
}

/// Checks every general-position condition exactly.
pub fn validate_drawing(g: &Graph, d: &Drawing) -> Result<(), GraphError> {
    analyze(g, d).map(|_| ())
}

/// Validates `d`, then returns every proper interior crossing of two edges.
pub fn detect_crossings(g: &Graph, d: &Drawing) -> Result<CrossingSet, GraphError> {
    analyze(g, d)
}

const LAYOUT_ATTEMPTS: u32 = 64;
const COORD_BITS: u32 = 24;

fn dyadic(x: f64) -> BigRational {
    let scaled = (x * f64::from(1u32 << COORD_BITS)).round() as i64;
    BigRational::new(BigInt::from(scaled), BigInt::one() << COORD_BITS)
}

fn attempt_layout(n: usize, seed: u64) -> Drawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = std::f64::consts::TAU / n.max(1) as f64;
    let points = (0..n)
        .map(|j| {
            let jitter: f64 = rng.gen_range(-0.2..0.2) * step;
            let theta = -std::f64::consts::PI + step * (j as f64 + 0.5) + jitter;
            // rational point exactly on the unit circle via t = tan(theta/2)
            let t = dyadic((theta / 2.0).tan());
            let one = BigRational::one();
            let t2 = &t * &t;
            let den = &one + &t2;
            Point::new((&one - &t2) / &den, (BigRational::from_integer(2.into()) * &t) / &den)
        })
        .collect();
    Drawing { points }
}

/// Places vertices in index order on the unit circle, with seeded angular
/// jitter. Degenerate placements are retried with the next seed; the seed
/// actually used is returned alongside the drawing.
pub fn circular_layout(g: &Graph, seed: u64) -> Result<(Drawing, u64), GraphError> {
    for attempt in 0..LAYOUT_ATTEMPTS {
        let s = seed.wrapping_add(u64::from(attempt));
        let d = attempt_layout(g.vertex_count(), s);
        match validate_drawing(g, &d) {
            Ok(()) => return Ok((d, s)),
            Err(GraphError::DegenerateDrawing(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GraphError::LayoutFailure(LAYOUT_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two_segments(p: [(i64, i64); 4]) -> (Graph, Drawing) {
        let g = Graph::from_parts(["a", "b", "c", "d"].map(Vertex::new), [("a", "b"), ("c", "d")])
            .unwrap();
        let d = Drawing::new(p.iter().map(|&(x, y)| Point::from_ints(x, y)).collect());
        (g, d)
    }

    #[test]
    fn diagonals_cross_at_center() {
        let (g, d) = two_segments([(0, 0), (1, 1), (0, 1), (1, 0)]);
        let cs = detect_crossings(&g, &d).unwrap();
        assert_eq!(cs.k(), 1);
        assert_eq!(cs.crossings[0].point, Point::new(q(1, 2), q(1, 2)));
        assert_eq!(cs.crossings[0].params, (q(1, 2), q(1, 2)));
    }

    #[test]
    fn parallel_segments_do_not_cross() {
        let (g, d) = two_segments([(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(detect_crossings(&g, &d).unwrap().k(), 0);
    }

    #[test]
    fn shared_endpoint_is_not_a_crossing() {
        let g = Graph::from_parts(["a", "b", "c"].map(Vertex::new), [("a", "b"), ("a", "c")])
            .unwrap();
        let d = Drawing::new(vec![Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(0, 1)]);
        assert_eq!(detect_crossings(&g, &d).unwrap().k(), 0);

        // same edges, collinear and overlapping
        let d = Drawing::new(vec![Point::from_ints(0, 0), Point::from_ints(2, 0), Point::from_ints(1, 0)]);
        assert!(matches!(
            detect_crossings(&g, &d),
            Err(GraphError::DegenerateDrawing(Degeneracy::CollinearOverlap(..)))
        ));
    }

    #[test]
    fn vertex_on_edge_rejected() {
        let g = Graph::from_parts(["a", "b", "c"].map(Vertex::new), [("a", "b")]).unwrap();
        let d = Drawing::new(vec![Point::from_ints(0, 0), Point::from_ints(2, 2), Point::from_ints(1, 1)]);
        assert!(matches!(
            validate_drawing(&g, &d),
            Err(GraphError::DegenerateDrawing(Degeneracy::VertexOnEdge { .. }))
        ));
    }

    #[test]
    fn hexagon_long_diagonals_are_concurrent() {
        let pts = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)];
        let ids = ["p0", "p1", "p2", "p3", "p4", "p5"];
        let g = Graph::from_parts(ids.map(Vertex::new), [("p0", "p3"), ("p1", "p4"), ("p2", "p5")])
            .unwrap();
        let d = Drawing::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect());
        match validate_drawing(&g, &d) {
            Err(GraphError::DegenerateDrawing(Degeneracy::Concurrent { point, edges })) => {
                assert_eq!(point, Point::from_ints(0, 0));
                assert_eq!(edges.len(), 3);
            }
            other => panic!("expected concurrency, got {other:?}"),
        }
    }

    #[test]
    fn coincident_vertices_rejected() {
        let (g, d) = two_segments([(0, 0), (1, 1), (0, 0), (1, 0)]);
        assert!(matches!(
            validate_drawing(&g, &d),
            Err(GraphError::DegenerateDrawing(Degeneracy::CoincidentVertices(..)))
        ));
    }

    #[test]
    fn per_edge_lists_are_sorted() {
        // one long horizontal edge crossed by three verticals at x = 3, 1, 2
        let g = Graph::from_parts(
            ["l", "r", "a0", "a1", "b0", "b1", "c0", "c1"].map(Vertex::new),
            [("l", "r"), ("a0", "a1"), ("b0", "b1"), ("c0", "c1")],
        )
        .unwrap();
        let d = Drawing::new(
            [(0, 0), (4, 0), (3, -1), (3, 1), (1, -1), (1, 2), (2, -2), (2, 1)]
                .iter()
                .map(|&(x, y)| Point::from_ints(x, y))
                .collect(),
        );
        let cs = detect_crossings(&g, &d).unwrap();
        assert_eq!(cs.k(), 3);
        let params: Vec<_> = cs.per_edge[0].iter().map(|&c| cs.param(c, 0).clone()).collect();
        assert_eq!(params, vec![q(1, 4), q(1, 2), q(3, 4)]);
    }

    #[test]
    fn circular_layout_of_c4_with_interleaved_order() {
        // u1, u2, v1, v2 around the circle: u1-v1 and u2-v2 are the diagonals
        let g = Graph::from_parts(
            ["u1", "u2", "v1", "v2"].map(Vertex::new),
            [("u1", "v1"), ("v1", "u2"), ("u2", "v2"), ("v2", "u1")],
        )
        .unwrap();
        let (d, _) = circular_layout(&g, 0).unwrap();
        let cs = detect_crossings(&g, &d).unwrap();
        assert_eq!(cs.k(), 1);
        assert_eq!(cs.crossings[0].edges, (0, 2));
    }

    #[test]
    fn circular_layout_of_path_is_planar() {
        let g = Graph::from_parts(["a", "b", "c"].map(Vertex::new), [("a", "b"), ("b", "c")])
            .unwrap();
        for seed in 0..5 {
            let (d, _) = circular_layout(&g, seed).unwrap();
            assert_eq!(detect_crossings(&g, &d).unwrap().k(), 0);
        }
    }

    #[test]
    fn circular_layout_points_lie_on_unit_circle() {
        let g = Graph::from_parts(["a", "b", "c", "d", "e"].map(Vertex::new), []).unwrap();
        let (d, _) = circular_layout(&g, 7).unwrap();
        for p in &d.points {
            assert_eq!(&p.x * &p.x + &p.y * &p.y, BigRational::one());
        }
    }
}
