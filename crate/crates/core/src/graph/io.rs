//! JSON graph files:
//! `{"vertices":[{"id":"u1","side":"A","weight":"1","x":"0","y":"1/2"}],"edges":[["u1","v1"]]}`.
//! `side`, `weight`, `x` and `y` are optional; coordinates are rational strings.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{parse_rational, Drawing, Graph, GraphError, Point, Side, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphFileError {
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("vertex `{vertex}`: coordinate `{value}` is not a rational")]
    BadCoordinate { vertex: String, value: String },
    #[error("vertex `{0}` has only one coordinate")]
    HalfCoordinate(String),
    #[error("some vertices have coordinates and some do not")]
    PartialDrawing,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRecord {
    vertices: Vec<VertexRecord>,
    edges: Vec<[String; 2]>,
}

/// Graph plus its drawing when every vertex has coordinates.
pub fn parse_graph(text: &str) -> Result<(Graph, Option<Drawing>), GraphFileError> {
    let rec: GraphRecord = serde_json::from_str(text).map_err(|e| GraphFileError::Json(e.to_string()))?;
    let mut g = Graph::new();
    let mut points = Vec::new();
    for v in &rec.vertices {
        let mut vert = Vertex::weighted(v.id.clone(), v.weight.clone().unwrap_or_else(|| "1".into()));
        vert.side = v.side;
        g.add_vertex(vert)?;
        let coord = |s: &String| {
            parse_rational(s).ok_or_else(|| GraphFileError::BadCoordinate { vertex: v.id.clone(), value: s.clone() })
        };
        match (&v.x, &v.y) {
            (Some(x), Some(y)) => points.push(Point::new(coord(x)?, coord(y)?)),
            (None, None) => {}
            _ => return Err(GraphFileError::HalfCoordinate(v.id.clone())),
        }
    }
    for [u, v] in &rec.edges {
        g.add_edge_by_id(u, v)?;
    }
    let drawing = match points.len() {
        0 if !rec.vertices.is_empty() => None,
        n if n == rec.vertices.len() => Some(Drawing::new(points)),
        _ => return Err(GraphFileError::PartialDrawing),
    };
    Ok((g, drawing))
}

fn record(g: &Graph, d: Option<&Drawing>) -> GraphRecord {
    let vertices = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| VertexRecord {
            id: v.id.clone(),
            side: v.side,
            weight: (v.weight != "1").then(|| v.weight.clone()),
            x: d.map(|d| d.points[i].x.to_string()),
            y: d.map(|d| d.points[i].y.to_string()),
        })
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|&(a, b)| [g.vertex(a).id.clone(), g.vertex(b).id.clone()])
        .collect();
    GraphRecord { vertices, edges }
}

pub fn graph_to_value(g: &Graph, d: Option<&Drawing>) -> serde_json::Value {
    serde_json::to_value(record(g, d)).expect("graph record serializes")
}

pub fn graph_to_json(g: &Graph, d: Option<&Drawing>) -> String {
    serde_json::to_string(&record(g, d)).expect("graph record serializes")
}

/// SHA-256 of the compact JSON form of the graph without coordinates.
pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(graph_to_json(g, None).as_bytes()))
}
