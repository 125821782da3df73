//! The ten-vertex sub-gadget: terminals x, y, z, corners a1..a3, side
//! vertices b1..b3 and a hub c.

use std::collections::HashMap;

use super::report::{IdentityEntry, IdentityReport};
use super::GadgetError;
use crate::exactnum::{
    gadget_constants_with, BallComplex, Mag, SubgadgetKind, SubgadgetWeights, WeightSet,
};
use crate::graph::{Drawing, Graph, Point, Side, Vertex};
use crate::matching::{
    boundary_profile_with, matching_polynomial, BoundaryEdge, BoundaryProfile, EngineConfig,
    WeightAssignment,
};
use crate::poly::MultiPoly;
use crate::ring::Ring;

#[derive(Debug, Clone)]
pub struct SubgadgetTemplate {
    pub kind: SubgadgetKind,
    pub graph: Graph,
    /// Terminal edges in the order x, y, z.
    pub boundary: [BoundaryEdge; 3],
    pub drawing: Drawing,
}

const VERTICES: [(&str, char, Side, i64, i64); 10] = [
    ("x", 't', Side::B, 0, 0),
    ("y", 't', Side::B, 12, 0),
    ("z", 't', Side::B, 6, 9),
    ("a1", 'a', Side::A, 2, 1),
    ("a2", 'a', Side::A, 10, 1),
    ("a3", 'a', Side::A, 6, 7),
    ("b1", 'b', Side::B, 6, 1),
    ("b2", 'b', Side::B, 4, 4),
    ("b3", 'b', Side::B, 8, 4),
    ("c", 'c', Side::A, 6, 3),
];

const EDGES: [(&str, &str); 12] = [
    ("x", "a1"),
    ("y", "a2"),
    ("z", "a3"),
    ("a1", "b1"),
    ("b1", "a2"),
    ("a1", "b2"),
    ("b2", "a3"),
    ("a2", "b3"),
    ("b3", "a3"),
    ("b1", "c"),
    ("b2", "c"),
    ("b3", "c"),
];

/// Builds the template with weight tags `a<k>`, `b<k>`, `c<k>` and
/// terminal tags `x`, `y`, `z`.
pub fn build_subgadget(kind: SubgadgetKind) -> SubgadgetTemplate {
    let k = kind.index();
    build_with_tags(kind, |role, id| match role {
        't' => id.to_string(),
        r => format!("{r}{k}"),
    })
}

fn build_with_tags(kind: SubgadgetKind, tag: impl Fn(char, &str) -> String) -> SubgadgetTemplate {
    let vertices = VERTICES
        .iter()
        .map(|&(id, role, side, _, _)| Vertex::weighted(id, tag(role, id)).with_side(side));
    let graph = Graph::from_parts(vertices, EDGES).expect("static template");
    let drawing = Drawing::new(
        VERTICES
            .iter()
            .map(|&(_, _, _, x, y)| Point::from_ints(x, y))
            .collect(),
    );
    let idx = |s: &str| graph.vertex_index(s).unwrap();
    let boundary = [("x", "a1"), ("y", "a2"), ("z", "a3")]
        .map(|(t, i)| BoundaryEdge { terminal: idx(t), internal: idx(i) });
    SubgadgetTemplate { kind, graph, boundary, drawing }
}

/// The template with all three corners tagged `a`, sides `b`, hub `c`.
fn symbolic_template() -> SubgadgetTemplate {
    build_with_tags(SubgadgetKind::Delta1, |role, id| match role {
        't' => id.to_string(),
        r => r.to_string(),
    })
}

/// Matching polynomial of the template over Z[a, b, c, x, y, z].
pub fn symbolic_gadget_polynomial() -> MultiPoly {
    let t = symbolic_template();
    matching_polynomial(&t.graph, &WeightAssignment::symbolic(&t.graph))
        .expect("ten-vertex template is within budget")
}

/// The expansion as printed next to the equation systems.
pub const PRINTED_EXPANSION: &str = "b^3c + 3b^2 + (x+y+z)(b(4+3ab+2bc+ab^2c)) \
     + (xy+xz+yz)(3+8ab+3bc+3a^2b^2+4ab^2c+a^2b^3c) \
     + xyz(c(2+9ab+6a^2b^2+a^3b^3) + 3(2a+4a^2b+a^3b^2))";

pub fn printed_gadget_polynomial() -> MultiPoly {
    PRINTED_EXPANSION.parse().expect("printed expansion parses")
}

/// Computed polynomial, printed polynomial and their difference.
#[derive(Debug, Clone)]
pub struct ExpansionCheck {
    pub computed: MultiPoly,
    pub printed: MultiPoly,
    pub difference: MultiPoly,
}

impl ExpansionCheck {
    pub fn equal(&self) -> bool {
        self.difference.is_exact_zero()
    }
}

pub fn check_printed_expansion() -> ExpansionCheck {
    let computed = symbolic_gadget_polynomial();
    let printed = printed_gadget_polynomial();
    let difference = computed.sub(&printed).compacted();
    ExpansionCheck { computed, printed, difference }
}

/// Boundary profile over Z[a, b, c]; terminals excluded from the product.
pub fn symbolic_profile() -> BoundaryProfile<MultiPoly> {
    let t = symbolic_template();
    let w = WeightAssignment::symbolic(&t.graph);
    let weights: Vec<MultiPoly> = t
        .graph
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, vert)| {
            if t.boundary.iter().any(|e| e.terminal == v) {
                MultiPoly::one_elem()
            } else {
                w.get(&vert.weight).unwrap()
            }
        })
        .collect();
    boundary_profile_with(&t.graph, &weights, &t.boundary, EngineConfig::default())
        .expect("template profile")
}

/// Per-vertex ball weights for a template; terminals weigh 1.
pub(crate) fn template_weights(t: &SubgadgetTemplate, w: &SubgadgetWeights) -> Vec<BallComplex> {
    t.graph
        .vertices()
        .iter()
        .map(|v| match v.weight.chars().next() {
            Some('a') => w.a.clone(),
            Some('b') => w.b.clone(),
            Some('c') => w.c.clone(),
            _ => BallComplex::one_elem(),
        })
        .collect()
}

/// The eight profile entries at the given weights, bit `j` = edge to corner `a(j+1)` in.
pub fn numeric_profile(w: &SubgadgetWeights) -> Result<Vec<BallComplex>, GadgetError> {
    let t = build_subgadget(w.kind);
    let weights = template_weights(&t, w);
    Ok(boundary_profile_with(&t.graph, &weights, &t.boundary, EngineConfig::default())?.values)
}

/// Whether the pattern is one of the kind's allowed ones.
pub fn allowed_pattern(kind: SubgadgetKind, pattern: usize) -> bool {
    let ins = pattern.count_ones();
    match kind {
        SubgadgetKind::Delta1 => ins == 3 || ins == 1,
        SubgadgetKind::Delta2 => ins == 3 || ins == 0,
    }
}

pub(crate) fn pattern_label(pattern: usize, names: &[&str]) -> String {
    let ins: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| pattern >> i & 1 == 1)
        .map(|(_, n)| *n)
        .collect();
    if ins.is_empty() {
        "in:{}".to_string()
    } else {
        format!("in:{{{}}}", ins.join(","))
    }
}

/// Radius tolerance for identity entries.
pub fn identity_tolerance() -> Mag {
    Mag::from_f64_up(1e-20)
}

pub fn verify_subgadget(
    kind: SubgadgetKind,
    set: WeightSet,
    precision: u32,
) -> Result<IdentityReport, GadgetError> {
    let w = gadget_constants_with(kind, set, precision)?;
    verify_subgadget_weights(&w, precision)
}

/// Checks a profile at arbitrary weights against the kind's target shape.
pub fn verify_subgadget_weights(w: &SubgadgetWeights, precision: u32) -> Result<IdentityReport, GadgetError> {
    let values = numeric_profile(w)?;
    let target_name = match w.kind {
        SubgadgetKind::Delta1 => "C1",
        SubgadgetKind::Delta2 => "C2",
    };
    let mut report = IdentityReport::new(format!("{} ({} weights)", w.kind, w.set), precision);
    let tol = identity_tolerance();
    for (p, v) in values.into_iter().enumerate() {
        let label = pattern_label(p, &["x", "y", "z"]);
        let entry = if allowed_pattern(w.kind, p) {
            IdentityEntry::check(label, target_name, v, Some(w.normalization.clone()), tol)
        } else {
            IdentityEntry::check(label, "0", v, None, tol)
        };
        report.entries.push(entry);
    }
    Ok(report)
}

/// The same weights with `b` shifted by a real offset.
pub fn perturb_b(w: &SubgadgetWeights, offset: &str) -> SubgadgetWeights {
    let shift = BallComplex::from_decimal(offset, "0", w.b.precision());
    SubgadgetWeights { b: w.b.add(&shift), ..w.clone() }
}

/// Numeric values of the symbolic profile entries, for cross-checks.
pub fn eval_symbolic_profile(w: &SubgadgetWeights) -> Result<Vec<BallComplex>, GadgetError> {
    let env: HashMap<String, BallComplex> = [("a", &w.a), ("b", &w.b), ("c", &w.c)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    symbolic_profile()
        .values
        .iter()
        .map(|p| p.eval(&env).map_err(GadgetError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{check_bipartite, detect_crossings};

    #[test]
    fn template_shape() {
        for kind in [SubgadgetKind::Delta1, SubgadgetKind::Delta2] {
            let t = build_subgadget(kind);
            assert_eq!(t.graph.vertex_count(), 10);
            assert_eq!(t.graph.edge_count(), 12);
            for e in &t.boundary {
                assert_eq!(t.graph.degree(e.terminal), 1);
            }
            let bip = check_bipartite(&t.graph).unwrap();
            let a = t.graph.vertex_index("a1").unwrap();
            let c = t.graph.vertex_index("c").unwrap();
            assert_eq!(bip.side(a), bip.side(c));
            assert_eq!(detect_crossings(&t.graph, &t.drawing).unwrap().k(), 0);
        }
    }

    #[test]
    fn constant_term_and_symmetry() {
        let p = symbolic_gadget_polynomial();
        let none: [(&str, u32); 3] = [("x", 0), ("y", 0), ("z", 0)];
        assert_eq!(p.coefficient(&none), "b^3c + 3b^2".parse().unwrap());
        let xy = p.coefficient(&[("x", 1), ("y", 1), ("z", 0)]);
        let yz = p.coefficient(&[("x", 0), ("y", 1), ("z", 1)]);
        assert!(xy.sub(&yz).is_exact_zero());
    }

    #[test]
    fn linear_coefficient_matches_print() {
        let p = symbolic_gadget_polynomial();
        let x = p.coefficient(&[("x", 1), ("y", 0), ("z", 0)]);
        assert_eq!(x, "b(4+3ab+2bc+ab^2c)".parse().unwrap());
    }

    #[test]
    fn profile_reconstructs_polynomial() {
        let prof = symbolic_profile();
        let mut acc = MultiPoly::zero_elem();
        for (p, v) in prof.values.iter().enumerate() {
            let mut t = v.clone();
            for (i, s) in ["x", "y", "z"].iter().enumerate() {
                if p >> i & 1 == 0 {
                    t = t.mul(&MultiPoly::var(s));
                }
            }
            acc = acc.add(&t);
        }
        assert_eq!(acc, symbolic_gadget_polynomial());
    }

    #[test]
    fn corrected_weights_satisfy_both_identities() {
        for kind in [SubgadgetKind::Delta1, SubgadgetKind::Delta2] {
            let r = verify_subgadget(kind, WeightSet::Corrected, 256).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
