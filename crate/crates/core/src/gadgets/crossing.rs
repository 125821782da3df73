//! The 42-vertex crossing gadget: six sub-gadget blocks, bottom row
//! Δ1 Δ2 Δ1 and top row Δ2 Δ1 Δ2, joined by seven connector edges.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::report::{IdentityEntry, IdentityReport};
use super::subgadget::{identity_tolerance, numeric_profile, pattern_label};
use super::GadgetError;
use crate::exactnum::{gadget_constants_with, BallComplex, SubgadgetKind, SubgadgetWeights, WeightSet};
use crate::graph::{Drawing, Graph, Point, Side, Vertex};
use crate::matching::{BoundaryEdge, Engine, EngineConfig};
use crate::ring::Ring;

#[derive(Debug, Clone)]
pub struct Block {
    pub kind: SubgadgetKind,
    /// Corners a_k1, a_k2, a_k3.
    pub a: [usize; 3],
    /// b_k1 (between a_k1, a_k2), b_k2 (a_k1, a_k3), b_k3 (a_k2, a_k3).
    pub b: [usize; 3],
    pub c: usize,
}

#[derive(Debug, Clone)]
pub struct CrossingGadget {
    pub graph: Graph,
    pub blocks: Vec<Block>,
    pub connectors: Vec<(usize, usize)>,
    /// Attachment vertices for the x, y, z, w sides.
    pub attachments: [usize; 4],
    /// Layout on a 14 x 7 box, attachments at the four corners.
    pub drawing: Drawing,
}

pub const TERMINALS: [&str; 4] = ["x", "y", "z", "w"];

const KINDS: [SubgadgetKind; 6] = [
    SubgadgetKind::Delta1,
    SubgadgetKind::Delta2,
    SubgadgetKind::Delta1,
    SubgadgetKind::Delta2,
    SubgadgetKind::Delta1,
    SubgadgetKind::Delta2,
];

/// Connector edges as (block, corner) pairs, transcribed from the figure.
pub const CONNECTORS: [((usize, usize), (usize, usize)); 7] = [
    ((1, 2), (2, 1)),
    ((2, 2), (3, 1)),
    ((1, 3), (4, 3)),
    ((4, 2), (5, 1)),
    ((5, 3), (2, 3)),
    ((5, 2), (6, 1)),
    ((6, 3), (3, 3)),
];

/// (block, corner) of the x, y, z, w attachments.
pub const ATTACHMENTS: [(usize, usize); 4] = [(4, 1), (3, 2), (1, 1), (6, 2)];

/// Figure coordinates in half units (x2), per block: a1, a2, a3, b1, b2, b3, c.
const BLOCK_COORDS: [[(i64, i64); 7]; 6] = [
    [(0, 0), (8, 0), (4, 6), (4, 0), (2, 3), (6, 3), (4, 2)],
    [(10, 0), (18, 0), (14, 6), (14, 0), (12, 3), (16, 3), (14, 2)],
    [(20, 0), (28, 0), (24, 6), (24, 0), (22, 3), (26, 3), (24, 2)],
    [(0, 14), (8, 14), (4, 8), (4, 14), (2, 11), (6, 11), (4, 12)],
    [(10, 14), (18, 14), (14, 8), (14, 14), (12, 11), (16, 11), (14, 12)],
    [(20, 14), (28, 14), (24, 8), (24, 14), (22, 11), (26, 11), (24, 12)],
];

/// Terminal positions in half units, order x, y, z, w.
const TERMINAL_COORDS: [(i64, i64); 4] = [(0, 16), (28, -2), (0, -2), (28, 16)];

fn half(v: i64) -> BigRational {
    BigRational::new(BigInt::from(v), BigInt::from(2))
}

pub fn build_crossing_gadget() -> CrossingGadget {
    let mut g = Graph::new();
    let mut blocks = Vec::new();
    let mut points = Vec::new();
    for (k, kind) in KINDS.iter().enumerate() {
        let n = k + 1;
        let t = kind.index();
        // blocks 1, 3, 5 put corners and hub on side A, 2, 4, 6 their sides
        let odd = n % 2 == 1;
        let (ac_side, b_side) = if odd { (Side::A, Side::B) } else { (Side::B, Side::A) };
        let mut add = |id: String, tag: String, side: Side, xy: (i64, i64)| {
            points.push(Point::new(half(xy.0), half(xy.1)));
            g.add_vertex(Vertex::weighted(id, tag).with_side(side)).unwrap()
        };
        let c = BLOCK_COORDS[k];
        let a = [0, 1, 2].map(|j| add(format!("a{n}{}", j + 1), format!("a{t}"), ac_side, c[j]));
        let b = [0, 1, 2].map(|j| add(format!("b{n}{}", j + 1), format!("b{t}"), b_side, c[3 + j]));
        let hub = add(format!("c{n}"), format!("c{t}"), ac_side, c[6]);
        blocks.push(Block { kind: *kind, a, b, c: hub });
    }
    for bl in &blocks {
        let [a1, a2, a3] = bl.a;
        let [b1, b2, b3] = bl.b;
        for (u, v) in [(a1, b1), (b1, a2), (a1, b2), (b2, a3), (a2, b3), (b3, a3), (b1, bl.c), (b2, bl.c), (b3, bl.c)] {
            g.add_edge(u, v).unwrap();
        }
    }
    let corner = |(k, j): (usize, usize)| blocks[k - 1].a[j - 1];
    let mut connectors = Vec::new();
    for (p, q) in CONNECTORS {
        let (u, v) = (corner(p), corner(q));
        g.add_edge(u, v).unwrap();
        connectors.push((u, v));
    }
    let attachments = ATTACHMENTS.map(corner);
    CrossingGadget { graph: g, blocks, connectors, attachments, drawing: Drawing::new(points) }
}

impl CrossingGadget {
    /// The gadget plus terminal vertices x, y, z, w (weight 1) and their
    /// edges, with the terminal edges as boundary in that order.
    pub fn with_terminals(&self) -> (Graph, Drawing, [BoundaryEdge; 4]) {
        let mut g = self.graph.clone();
        let mut pts = self.drawing.points.clone();
        let mut boundary = Vec::new();
        for (i, name) in TERMINALS.iter().enumerate() {
            let att = self.attachments[i];
            let side = g.vertex(att).side.unwrap().opposite();
            let t = g.add_vertex(Vertex::new(*name).with_side(side)).unwrap();
            g.add_edge(t, att).unwrap();
            let (x, y) = TERMINAL_COORDS[i];
            pts.push(Point::new(half(x), half(y)));
            boundary.push(BoundaryEdge { terminal: t, internal: att });
        }
        (g, Drawing::new(pts), boundary.try_into().unwrap())
    }

    /// Coordinates scaled into [-1, 1]^2: x attachment at (-1, 1), w at
    /// (1, 1), y at (1, -1), z at (-1, -1).
    pub fn unit_coordinates(&self) -> Vec<(BigRational, BigRational)> {
        let sx = BigRational::from_integer(7.into());
        let sy = BigRational::new(7.into(), 2.into());
        self.drawing
            .points
            .iter()
            .map(|p| ((&p.x - &sx) / &sx, (&p.y - &sy) / &sy))
            .collect()
    }

    /// Ball weight per gadget vertex.
    pub fn weights(&self, w1: &SubgadgetWeights, w2: &SubgadgetWeights) -> Vec<BallComplex> {
        let mut out = vec![BallComplex::one_elem(); self.graph.vertex_count()];
        for bl in &self.blocks {
            let w = if bl.kind == SubgadgetKind::Delta1 { w1 } else { w2 };
            for &v in &bl.a {
                out[v] = w.a.clone();
            }
            for &v in &bl.b {
                out[v] = w.b.clone();
            }
            out[bl.c] = w.c.clone();
        }
        out
    }
}

/// Edge slot of each block corner among the 11 external edges: connectors
/// 0..7, then terminal edges 7..11 in x, y, z, w order.
fn corner_slots() -> [[usize; 3]; 6] {
    let mut slots = [[usize::MAX; 3]; 6];
    for (i, (p, q)) in CONNECTORS.iter().enumerate() {
        slots[p.0 - 1][p.1 - 1] = i;
        slots[q.0 - 1][q.1 - 1] = i;
    }
    for (i, a) in ATTACHMENTS.iter().enumerate() {
        slots[a.0 - 1][a.1 - 1] = 7 + i;
    }
    slots
}

/// Profile over the four terminal edges by composing the six block
/// profiles over all 2^11 connector and terminal states.
pub fn composed_profile<R: Ring>(p1: &[R], p2: &[R]) -> Vec<R> {
    let slots = corner_slots();
    let mut out = vec![R::zero_elem(); 16];
    for state in 0usize..1 << 11 {
        let mut term = R::one_elem();
        for (k, kind) in KINDS.iter().enumerate() {
            let pat = (0..3).map(|j| (state >> slots[k][j] & 1) << j).sum::<usize>();
            let p = if *kind == SubgadgetKind::Delta1 { &p1[pat] } else { &p2[pat] };
            if p.is_exact_zero() {
                term = R::zero_elem();
                break;
            }
            term = term.mul(p);
        }
        if !term.is_exact_zero() {
            out[state >> 7] = out[state >> 7].add(&term);
        }
    }
    out
}

/// The same 16 entries by running the matching recursion on the full
/// gadget with terminals, one pattern per task.
pub fn direct_profile(
    gadget: &CrossingGadget,
    w1: &SubgadgetWeights,
    w2: &SubgadgetWeights,
    cfg: EngineConfig,
) -> Result<Vec<BallComplex>, GadgetError> {
    let (g, _, boundary) = gadget.with_terminals();
    let mut weights = gadget.weights(w1, w2);
    weights.resize(g.vertex_count(), BallComplex::one_elem());
    (0..16usize)
        .into_par_iter()
        .map(|pattern| {
            let mut keep = vec![true; g.vertex_count()];
            for (i, e) in boundary.iter().enumerate() {
                keep[e.terminal] = false;
                if pattern >> i & 1 == 1 {
                    keep[e.internal] = false;
                }
            }
            let mut engine = Engine::new(g.vertex_count(), g.edges(), &weights, cfg)?;
            Ok(engine.mp_induced(&keep)?)
        })
        .collect()
}

/// Allowed patterns of the four-edge identity: both edges of each simulated
/// pair agree (x with y, z with w).
pub fn crossing_allowed(pattern: usize) -> bool {
    let bit = |i: usize| pattern >> i & 1;
    bit(0) == bit(1) && bit(2) == bit(3)
}

/// Pattern images under x<->y, z<->w and (x,y)<->(z,w).
pub fn crossing_symmetries(pattern: usize) -> [usize; 3] {
    let bit = |i: usize| pattern >> i & 1;
    let make = |b: [usize; 4]| b.iter().enumerate().map(|(i, v)| v << i).sum();
    [
        make([bit(1), bit(0), bit(2), bit(3)]),
        make([bit(0), bit(1), bit(3), bit(2)]),
        make([bit(2), bit(3), bit(0), bit(1)]),
    ]
}

#[derive(Debug, Clone)]
pub struct CrossingVerification {
    pub composed: IdentityReport,
    pub direct: Option<IdentityReport>,
    /// Patterns where composed and direct balls are disjoint.
    pub disagreements: Vec<usize>,
    /// Patterns whose symmetric images carry disjoint balls.
    pub asymmetries: Vec<usize>,
    pub target: BallComplex,
}

impl CrossingVerification {
    pub fn passed(&self) -> bool {
        self.composed.passed()
            && self.direct.as_ref().is_none_or(IdentityReport::passed)
            && self.disagreements.is_empty()
            && self.asymmetries.is_empty()
    }
}

fn identity_report(name: &str, precision: u32, values: &[BallComplex], target: &BallComplex) -> IdentityReport {
    let mut r = IdentityReport::new(name, precision);
    let tol = identity_tolerance();
    for (p, v) in values.iter().enumerate() {
        let label = pattern_label(p, &TERMINALS);
        r.entries.push(if crossing_allowed(p) {
            IdentityEntry::check(label, "C1^3 C2^3", v.clone(), Some(target.clone()), tol)
        } else {
            IdentityEntry::check(label, "0", v.clone(), None, tol)
        });
    }
    r
}

pub fn verify_crossing_gadget(
    set: WeightSet,
    precision: u32,
    direct: bool,
) -> Result<CrossingVerification, GadgetError> {
    let w1 = gadget_constants_with(SubgadgetKind::Delta1, set, precision)?;
    let w2 = gadget_constants_with(SubgadgetKind::Delta2, set, precision)?;
    let target = w1.normalization.mul(&w2.normalization).pow(3);
    let composed = composed_profile(&numeric_profile(&w1)?, &numeric_profile(&w2)?);
    let gadget = build_crossing_gadget();
    let direct_values = if direct {
        Some(direct_profile(&gadget, &w1, &w2, EngineConfig::default())?)
    } else {
        None
    };
    let disagreements = direct_values
        .as_ref()
        .map(|d| (0..16).filter(|&p| !composed[p].overlaps(&d[p])).collect())
        .unwrap_or_default();
    let asymmetries = (0..16)
        .filter(|&p| {
            crossing_symmetries(p)
                .iter()
                .any(|&q| !composed[p].overlaps(&composed[q]))
        })
        .collect();
    let name = format!("crossing gadget ({set} weights)");
    Ok(CrossingVerification {
        composed: identity_report(&format!("{name}, composed"), precision, &composed, &target),
        direct: direct_values.map(|d| identity_report(&format!("{name}, direct"), precision, &d, &target)),
        disagreements,
        asymmetries,
        target,
    })
}
