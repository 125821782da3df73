//! Crossing replacement: every pairwise crossing of a straight-line drawing
//! becomes one crossing gadget, and the matching polynomial of the result
//! is `C^k` times the number of matchings of the input.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use super::ReductionError;
use crate::exactnum::{
    certify_integer, crossing_constant_with, gadget_constants_with, BallComplex, ExactError,
    PrecisionPolicy, SubgadgetKind, WeightSet,
};
use crate::gadgets::{build_crossing_gadget, radius_log2};
use crate::graph::{
    check_bipartite, detect_crossings, graph_hash, Drawing, Graph, GraphError, Point, Side,
};
use crate::matching::{matching_polynomial_with, EngineConfig, WeightAssignment};
use crate::poly::MultiPoly;
use crate::ring::Ring;

/// One gadget standing in for one crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetPlacement {
    pub crossing: usize,
    /// Input edge threaded through the x/y attachments.
    pub xy_edge: usize,
    /// Input edge threaded through the w/z attachments.
    pub wz_edge: usize,
    pub point: Point,
    /// Index of the gadget's first vertex in the output graph; the 42
    /// gadget vertices are contiguous.
    pub first_vertex: usize,
}

#[derive(Debug, Clone)]
pub struct WeightedPlanarInstance {
    pub graph: Graph,
    pub k: usize,
    pub placements: Vec<GadgetPlacement>,
    pub drawing: Drawing,
    pub input_vertices: usize,
}

impl WeightedPlanarInstance {
    pub fn placements_json(&self, input: &Graph) -> Value {
        let edge = |e: usize| {
            let (a, b) = input.edges()[e];
            json!([input.vertex(a).id, input.vertex(b).id])
        };
        Value::Array(
            self.placements
                .iter()
                .map(|p| {
                    json!({
                        "crossing": p.crossing,
                        "xy_edge": edge(p.xy_edge),
                        "wz_edge": edge(p.wz_edge),
                        "point": [p.point.x.to_string(), p.point.y.to_string()],
                        "first_vertex": self.graph.vertex(p.first_vertex).id,
                    })
                })
                .collect(),
        )
    }
}

fn sides_of(g: &Graph) -> Result<Vec<Side>, ReductionError> {
    if g.vertices().iter().all(|v| v.side.is_some()) {
        return Ok(g.vertices().iter().map(|v| v.side.unwrap()).collect());
    }
    match check_bipartite(g) {
        Ok(b) => Ok(b.sides),
        Err(GraphError::OddCycle(_)) => Err(ReductionError::NotBipartite),
        Err(e) => Err(e.into()),
    }
}

fn orientation_conflict(e: GraphError) -> ReductionError {
    match e {
        GraphError::SideConflict(a, b) => ReductionError::OrientationConflict(format!("{a}-{b}")),
        e => e.into(),
    }
}

/// Gadgets are drawn as affine images of their unit-square layout scaled
/// by `eps`; `eps` is halved until the result is crossing-free.
const MAX_SHRINK_STEPS: usize = 64;

pub fn replace_crossings(g: &Graph, d: &Drawing) -> Result<WeightedPlanarInstance, ReductionError> {
    if let Some(v) = g.vertices().iter().find(|v| v.weight != "1") {
        return Err(ReductionError::NotUnitWeighted(v.id.clone()));
    }
    let sides = sides_of(g)?;
    let cs = detect_crossings(g, d)?;
    let base = g.with_sides(&sides)?;
    if cs.k() == 0 {
        return Ok(WeightedPlanarInstance {
            graph: base,
            k: 0,
            placements: Vec::new(),
            drawing: d.clone(),
            input_vertices: g.vertex_count(),
        });
    }

    let gadget = build_crossing_gadget();
    let unit = gadget.unit_coordinates();
    let mut out = Graph::new();
    for v in base.vertices() {
        out.add_vertex(v.clone())?;
    }
    let mut placements = Vec::with_capacity(cs.k());
    for (c, x) in cs.crossings.iter().enumerate() {
        let first_vertex = out.vertex_count();
        out = out.disjoint_union(&gadget.graph, &format!("x{c}_"))?;
        placements.push(GadgetPlacement {
            crossing: c,
            xy_edge: x.edges.0,
            wz_edge: x.edges.1,
            point: x.point.clone(),
            first_vertex,
        });
    }

    // (A end, B end) of every input edge
    let ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(p, q)| if sides[p] == Side::A { (p, q) } else { (q, p) })
        .collect();
    for (e, &(p, q)) in g.edges().iter().enumerate() {
        let mut along = cs.per_edge[e].clone();
        if ends[e].0 != p {
            along.reverse();
        }
        if along.is_empty() {
            out.add_edge(p, q).map_err(orientation_conflict)?;
            continue;
        }
        let mut prev = ends[e].0;
        for &c in &along {
            let pl = &placements[c];
            let [ax, ay, az, aw] = gadget.attachments;
            let (inn, outn) = if pl.xy_edge == e { (ax, ay) } else { (aw, az) };
            out.add_edge(prev, pl.first_vertex + inn).map_err(orientation_conflict)?;
            prev = pl.first_vertex + outn;
        }
        out.add_edge(prev, ends[e].1).map_err(orientation_conflict)?;
    }

    check_bipartite(&out).map_err(|_| ReductionError::OrientationConflict("output is not bipartite".into()))?;
    for &(a, b) in out.edges() {
        if out.vertex(a).side == out.vertex(b).side {
            return Err(orientation_conflict(GraphError::SideConflict(
                out.vertex(a).id.clone(),
                out.vertex(b).id.clone(),
            )));
        }
    }

    let direction = |e: usize| {
        let (a, b) = ends[e];
        let (pa, pb) = (&d.points[a], &d.points[b]);
        (&pb.x - &pa.x, &pb.y - &pa.y)
    };
    let two = BigRational::from_integer(2.into());
    let mut eps = BigRational::new(BigInt::one(), BigInt::from(4));
    for _ in 0..MAX_SHRINK_STEPS {
        let mut points = d.points.clone();
        for pl in &placements {
            let (d1x, d1y) = direction(pl.xy_edge);
            let (d2x, d2y) = direction(pl.wz_edge);
            let ux = (&d1x - &d2x) / &two;
            let uy = (&d1y - &d2y) / &two;
            let vx = -(&d1x + &d2x) / &two;
            let vy = -(&d1y + &d2y) / &two;
            for (gx, gy) in &unit {
                let px = &pl.point.x + &eps * (gx * &ux + gy * &vx);
                let py = &pl.point.y + &eps * (gx * &uy + gy * &vy);
                points.push(Point::new(px, py));
            }
        }
        let drawing = Drawing::new(points);
        match detect_crossings(&out, &drawing) {
            Ok(set) if set.k() == 0 => {
                return Ok(WeightedPlanarInstance {
                    graph: out,
                    k: cs.k(),
                    placements,
                    drawing,
                    input_vertices: g.vertex_count(),
                })
            }
            Ok(_) | Err(GraphError::DegenerateDrawing(_)) => eps /= &two,
            Err(e) => return Err(e.into()),
        }
    }
    Err(ReductionError::NoPlaneDrawing)
}

/// Ball values for the seven weight tags at one precision.
pub fn gadget_weight_table(set: WeightSet, precision: u32) -> Result<WeightAssignment<BallComplex>, ExactError> {
    let mut w = WeightAssignment::new();
    for kind in [SubgadgetKind::Delta1, SubgadgetKind::Delta2] {
        let c = gadget_constants_with(kind, set, precision)?;
        let t = kind.index();
        w.insert(format!("a{t}"), c.a);
        w.insert(format!("b{t}"), c.b);
        w.insert(format!("c{t}"), c.c);
    }
    Ok(w)
}

#[derive(Debug, Clone, Copy)]
pub struct ReductionOptions {
    pub weights: WeightSet,
    pub policy: PrecisionPolicy,
    pub engine: EngineConfig,
    /// Seed of the layout the drawing came from, recorded in the certificate.
    pub seed: Option<u64>,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            weights: WeightSet::Published,
            policy: PrecisionPolicy::default(),
            engine: EngineConfig::default(),
            seed: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    pub input_hash: String,
    pub seed: Option<u64>,
    pub k: usize,
    pub g1_vertices: usize,
    pub weights: WeightSet,
    pub precision: u32,
    /// `MP(G1) / C^k`.
    pub ball: BallComplex,
    pub integer: BigInt,
}

impl ReductionCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "input_hash": self.input_hash,
            "seed": self.seed,
            "k": self.k,
            "g1_vertices": self.g1_vertices,
            "weights": self.weights.to_string(),
            "precision": self.precision,
            "midpoint": {"re": self.ball.re_sci(20), "im": self.ball.im_sci(20)},
            "radius_log2": radius_log2(&self.ball),
            "integer": self.integer.to_string(),
        })
    }
}

/// `MP(G1) / C^k` at one precision.
pub fn normalized_value(
    inst: &WeightedPlanarInstance,
    set: WeightSet,
    precision: u32,
    engine: EngineConfig,
) -> Result<BallComplex, ReductionError> {
    let w = gadget_weight_table(set, precision)?;
    let mp = matching_polynomial_with(&inst.graph, &w, engine)?;
    if inst.k == 0 {
        return Ok(mp);
    }
    let c = crossing_constant_with(set, precision)?.c;
    Ok(mp.div(&c.pow(inst.k as u32))?)
}

pub fn count_via_reduction(g: &Graph, d: &Drawing, policy: PrecisionPolicy) -> Result<ReductionCertificate, ReductionError> {
    count_via_reduction_with(g, d, &ReductionOptions { policy, ..Default::default() })
}

pub fn count_via_reduction_with(
    g: &Graph,
    d: &Drawing,
    opts: &ReductionOptions,
) -> Result<ReductionCertificate, ReductionError> {
    let inst = replace_crossings(g, d)?;
    let ((ball, integer), precision) = opts.policy.run(
        |p| {
            let v = normalized_value(&inst, opts.weights, p, opts.engine)?;
            let n = certify_integer(&v)?;
            Ok::<_, ReductionError>((v, n))
        },
        ReductionError::is_insufficient_precision,
    )?;
    Ok(ReductionCertificate {
        input_hash: graph_hash(g),
        seed: opts.seed,
        k: inst.k,
        g1_vertices: inst.graph.vertex_count(),
        weights: opts.weights,
        precision,
        ball,
        integer,
    })
}

/// Symbolic matching polynomial of an instance over the six gadget weights.
#[derive(Debug, Clone)]
pub struct LambdaCheck {
    pub polynomial: MultiPoly,
    pub integer_coefficients: bool,
    /// The polynomial at the ball constants, divided by `C^k`.
    pub value: BallComplex,
    pub certified: Result<BigInt, ExactError>,
}

pub fn lambda_integrality(
    inst: &WeightedPlanarInstance,
    set: WeightSet,
    precision: u32,
    engine: EngineConfig,
) -> Result<LambdaCheck, ReductionError> {
    let polynomial = matching_polynomial_with(&inst.graph, &WeightAssignment::symbolic(&inst.graph), engine)?;
    let table = gadget_weight_table(set, precision)?;
    let env: HashMap<String, BallComplex> = polynomial
        .symbols()
        .iter()
        .map(|s| {
            table
                .get(s)
                .map(|v| (s.clone(), v))
                .ok_or_else(|| ReductionError::UnknownTag(s.clone()))
        })
        .collect::<Result<_, _>>()?;
    let mut value = polynomial.eval(&env)?;
    if inst.k > 0 {
        value = value.div(&crossing_constant_with(set, precision)?.c.pow(inst.k as u32))?;
    }
    Ok(LambdaCheck {
        integer_coefficients: polynomial.has_integer_coefficients(),
        certified: certify_integer(&value),
        polynomial,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn c4_crossed() -> (Graph, Drawing) {
        // u1-v1 and u2-v2 are the diagonals of the square
        let g = Graph::from_parts(
            ["u1", "u2", "v1", "v2"].map(Vertex::new),
            [("u1", "v1"), ("v1", "u2"), ("u2", "v2"), ("v2", "u1")],
        )
        .unwrap();
        let d = Drawing::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(2, 0),
            Point::from_ints(2, 2),
            Point::from_ints(0, 2),
        ]);
        (g, d)
    }

    #[test]
    fn planar_drawing_is_unchanged() {
        let g = Graph::from_parts(["a", "b"].map(Vertex::new), [("a", "b")]).unwrap();
        let d = Drawing::new(vec![Point::from_ints(0, 0), Point::from_ints(1, 0)]);
        let inst = replace_crossings(&g, &d).unwrap();
        assert_eq!(inst.k, 0);
        assert_eq!(inst.graph.vertex_count(), 2);
    }

    #[test]
    fn one_crossing_adds_one_gadget() {
        let (g, d) = c4_crossed();
        let inst = replace_crossings(&g, &d).unwrap();
        assert_eq!(inst.k, 1);
        assert_eq!(inst.graph.vertex_count(), 46);
        assert_eq!(inst.graph.edge_count(), 61 + 2 + 2 * 2);
        assert!(check_bipartite(&inst.graph).is_ok());
        assert_eq!(detect_crossings(&inst.graph, &inst.drawing).unwrap().k(), 0);
        let tags = inst.graph.weight_tags();
        assert!(tags.iter().all(|t| ["1", "a1", "b1", "c1", "a2", "b2", "c2"].contains(&t.as_str())));
    }

    #[test]
    fn weighted_input_is_rejected() {
        let g = Graph::from_parts([Vertex::weighted("a", "x")], []).unwrap();
        let d = Drawing::new(vec![Point::from_ints(0, 0)]);
        assert!(matches!(replace_crossings(&g, &d), Err(ReductionError::NotUnitWeighted(_))));
    }

    #[test]
    fn corrected_weights_count_c4() {
        let (g, d) = c4_crossed();
        let opts = ReductionOptions { weights: WeightSet::Corrected, ..Default::default() };
        let cert = count_via_reduction_with(&g, &d, &opts).unwrap();
        assert_eq!(cert.integer, BigInt::from(7));
        assert_eq!(cert.k, 1);
    }
}
