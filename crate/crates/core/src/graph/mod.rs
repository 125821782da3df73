//! Graph data model: simple undirected graphs whose vertices carry an opaque
//! id, a weight tag and an optional bipartition side.

mod bipartite;
mod geometry;
mod io;
mod pendant;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bipartite::{check_bipartite, Bipartition};
pub use geometry::{
    circular_layout, detect_crossings, orientation, validate_drawing, Crossing, CrossingSet,
    Degeneracy, Drawing, Point,
};
pub use io::{graph_hash, graph_to_json, graph_to_value, parse_graph, GraphFileError};
pub use pendant::{pendant_extension, PendantExtension};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("parallel edge `{0}`-`{1}`")]
    ParallelEdge(String, String),
    #[error("edge `{0}`-`{1}` joins two vertices on the same side")]
    SideConflict(String, String),
    #[error("invalid weight tag `{0}`")]
    InvalidWeightTag(String),
    #[error("graph is not bipartite: odd cycle {0:?}")]
    OddCycle(Vec<String>),
    #[error("degenerate drawing: {0}")]
    DegenerateDrawing(Degeneracy),
    #[error("drawing has {got} points but the graph has {expected} vertices")]
    DrawingSize { expected: usize, got: usize },
    #[error("no general-position layout found after {0} attempts")]
    LayoutFailure(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Parsed form of a weight tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightTag {
    One,
    Rational(BigRational),
    Symbol(String),
}

impl WeightTag {
    pub fn parse(tag: &str) -> Result<WeightTag, GraphError> {
        if tag == "1" {
            return Ok(WeightTag::One);
        }
        if let Some(q) = parse_rational(tag) {
            return Ok(if q == BigRational::from_integer(1.into()) {
                WeightTag::One
            } else {
                WeightTag::Rational(q)
            });
        }
        let mut chars = tag.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(WeightTag::Symbol(tag.to_string()))
        } else {
            Err(GraphError::InvalidWeightTag(tag.to_string()))
        }
    }
}

/// Parses `p` or `p/q` with optional leading minus; decimals are rejected.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let is_int = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) || den.starts_with('-') {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub weight: String,
    pub side: Option<Side>,
}

impl Vertex {
    pub fn new(id: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            weight: "1".into(),
            side: None,
        }
    }

    pub fn weighted(id: impl Into<String>, weight: impl Into<String>) -> Self {
        Vertex {
            id: id.into(),
            weight: weight.into(),
            side: None,
        }
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = Some(side);
        self
    }
}

/// Undirected simple graph. Vertices are addressed by dense indices in
/// insertion order; edges are stored as index pairs in insertion order.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts<'a>(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (u, v) in edges {
            g.add_edge_by_id(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> Result<usize, GraphError> {
        WeightTag::parse(&v.weight)?;
        if self.index.contains_key(&v.id) {
            return Err(GraphError::DuplicateVertex(v.id));
        }
        let i = self.vertices.len();
        self.index.insert(v.id.clone(), i);
        self.vertices.push(v);
        self.adjacency.push(Vec::new());
        Ok(i)
    }

    pub fn add_edge_by_id(&mut self, u: &str, v: &str) -> Result<usize, GraphError> {
        let a = self.require(u)?;
        let b = self.require(v)?;
        self.add_edge(a, b)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<usize, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(self.vertices[a].id.clone()));
        }
        if self.adjacency[a].contains(&b) {
            return Err(GraphError::ParallelEdge(
                self.vertices[a].id.clone(),
                self.vertices[b].id.clone(),
            ));
        }
        if let (Some(sa), Some(sb)) = (self.vertices[a].side, self.vertices[b].side) {
            if sa == sb {
                return Err(GraphError::SideConflict(
                    self.vertices[a].id.clone(),
                    self.vertices[b].id.clone(),
                ));
            }
        }
        self.adjacency[a].push(b);
        self.adjacency[b].push(a);
        self.edges.push((a, b));
        Ok(self.edges.len() - 1)
    }

    fn require(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    }

    /// Distinct weight tags in first-appearance order.
    pub fn weight_tags(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for v in &self.vertices {
            if !seen.contains(&v.weight) {
                seen.push(v.weight.clone());
            }
        }
        seen
    }

    /// Returns a copy with every vertex tag rewritten by `f`.
    pub fn map_weights(&self, mut f: impl FnMut(&Vertex) -> String) -> Graph {
        let mut g = self.clone();
        for v in &mut g.vertices {
            v.weight = f(v);
        }
        g
    }

    /// Returns a copy whose vertices carry the given sides.
    pub fn with_sides(&self, sides: &[Side]) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for (v, &s) in self.vertices.iter().zip(sides) {
            g.add_vertex(Vertex {
                side: Some(s),
                ..v.clone()
            })?;
        }
        for &(a, b) in &self.edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Disjoint union; vertex ids of `other` are prefixed to stay unique.
    pub fn disjoint_union(&self, other: &Graph, prefix: &str) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        let offset = g.vertex_count();
        for v in &other.vertices {
            g.add_vertex(Vertex {
                id: format!("{prefix}{}", v.id),
                ..v.clone()
            })?;
        }
        for &(a, b) in &other.edges {
            g.add_edge(a + offset, b + offset)?;
        }
        Ok(g)
    }

    /// Induced subgraph on the given vertex indices (kept in ascending order).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut map = vec![usize::MAX; self.vertex_count()];
        let mut g = Graph::new();
        for (new, &old) in sorted.iter().enumerate() {
            map[old] = new;
            g.add_vertex(self.vertices[old].clone())
                .expect("ids are unique in the parent graph");
        }
        for &(a, b) in &self.edges {
            if map[a] != usize::MAX && map[b] != usize::MAX {
                g.add_edge(map[a], map[b]).expect("parent graph is simple");
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = Graph::new();
        g.add_vertex(Vertex::new("u")).unwrap();
        g.add_vertex(Vertex::new("v")).unwrap();
        assert!(matches!(g.add_edge_by_id("u", "u"), Err(GraphError::SelfLoop(_))));
        g.add_edge_by_id("u", "v").unwrap();
        assert!(matches!(g.add_edge_by_id("v", "u"), Err(GraphError::ParallelEdge(..))));
        assert!(matches!(g.add_edge_by_id("u", "w"), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn side_conflict_detected() {
        let r = Graph::from_parts(
            [Vertex::new("u").with_side(Side::A), Vertex::new("v").with_side(Side::A)],
            [("u", "v")],
        );
        assert!(matches!(r, Err(GraphError::SideConflict(..))));
    }

    #[test]
    fn weight_tag_grammar() {
        assert_eq!(WeightTag::parse("1").unwrap(), WeightTag::One);
        assert_eq!(WeightTag::parse("2/2").unwrap(), WeightTag::One);
        assert!(matches!(WeightTag::parse("3/2").unwrap(), WeightTag::Rational(_)));
        assert!(matches!(WeightTag::parse("-4").unwrap(), WeightTag::Rational(_)));
        assert_eq!(WeightTag::parse("a1").unwrap(), WeightTag::Symbol("a1".into()));
        assert!(WeightTag::parse("0.5").is_err());
        assert!(WeightTag::parse("1/0").is_err());
        assert!(WeightTag::parse("").is_err());
    }

    #[test]
    fn induced_subgraph_keeps_edges() {
        let g = Graph::from_parts(
            ["a", "b", "c"].map(Vertex::new),
            [("a", "b"), ("b", "c"), ("a", "c")],
        )
        .unwrap();
        let h = g.induced(&[0, 2]);
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
    }
}
