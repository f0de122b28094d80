//! JSON graph format.
//!
//! ```json
//! {"kind":"ribbon","vertices":[{"genus":0}],
//!  "half_edges":[{"vertex":0,"color":0},...],
//!  "cyclic_order":[[0,1,2]],"edges":[[0,1]],"legs":[2]}
//! ```
//!
//! Unknown fields are rejected, and every structural invariant is checked
//! on load.

use crate::graph::{GraphError, GraphKind, GraphTopology, MobiusGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    MalformedJson(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    SchemaViolation(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(#[from] GraphError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub genus: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfEdgeJson {
    pub vertex: usize,
    pub color: u8,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub kind: String,
    pub vertices: Vec<VertexJson>,
    pub half_edges: Vec<HalfEdgeJson>,
    pub cyclic_order: Vec<Vec<usize>>,
    pub edges: Vec<[usize; 2]>,
    pub legs: Vec<usize>,
}

pub fn kind_from_str(s: &str) -> Result<GraphKind, JsonError> {
    match s {
        "ribbon" => Ok(GraphKind::Ribbon),
        "mobius" => Ok(GraphKind::Mobius),
        "dianalytic" => Ok(GraphKind::Dianalytic),
        other => Err(JsonError::SchemaViolation(format!(
            "unknown kind {other:?}"
        ))),
    }
}

pub fn graph_to_json(g: &MobiusGraph) -> GraphJson {
    GraphJson {
        kind: g.kind.as_str().to_string(),
        vertices: g
            .topology
            .vertex_genus
            .iter()
            .map(|&genus| VertexJson { genus })
            .collect(),
        half_edges: (0..g.topology.num_half_edges())
            .map(|h| HalfEdgeJson {
                vertex: g.topology.vertex_of[h],
                color: g.colour[h],
            })
            .collect(),
        cyclic_order: g.cyclic_order.clone(),
        edges: g.topology.edges().iter().map(|&(a, b)| [a, b]).collect(),
        legs: g.topology.legs.clone(),
    }
}

pub fn graph_from_json(j: &GraphJson) -> Result<MobiusGraph, JsonError> {
    let kind = kind_from_str(&j.kind)?;
    let n = j.half_edges.len();
    let bad = |msg: String| JsonError::SchemaViolation(msg);
    for (h, he) in j.half_edges.iter().enumerate() {
        if he.vertex >= j.vertices.len() {
            return Err(bad(format!("half edge {h} references vertex {}", he.vertex)));
        }
        if he.color > 1 {
            return Err(bad(format!("half edge {h} has color {}", he.color)));
        }
    }
    let mut pairing: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    for &l in &j.legs {
        if l >= n {
            return Err(bad(format!("leg entry {l} out of range")));
        }
        if used[l] {
            return Err(bad(format!("half edge {l} used twice")));
        }
        used[l] = true;
    }
    for &[a, b] in &j.edges {
        if a >= n || b >= n || a == b {
            return Err(bad(format!("edge [{a},{b}] malformed")));
        }
        if used[a] || used[b] {
            return Err(bad(format!(
                "edge [{a},{b}] reuses a half edge (possibly a leg)"
            )));
        }
        used[a] = true;
        used[b] = true;
        pairing[a] = b;
        pairing[b] = a;
    }
    if let Some(h) = used.iter().position(|&u| !u) {
        return Err(bad(format!(
            "half edge {h} appears in neither edges nor legs"
        )));
    }
    let g = MobiusGraph {
        topology: GraphTopology {
            vertex_of: j.half_edges.iter().map(|he| he.vertex).collect(),
            pairing,
            vertex_genus: j.vertices.iter().map(|v| v.genus).collect(),
            legs: j.legs.clone(),
        },
        cyclic_order: j.cyclic_order.clone(),
        colour: j.half_edges.iter().map(|he| he.color).collect(),
        kind,
    };
    g.validate()?;
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<MobiusGraph, JsonError> {
    let j: GraphJson = serde_json::from_str(text)?;
    graph_from_json(&j)
}

pub fn graph_to_string(g: &MobiusGraph) -> String {
    serde_json::to_string_pretty(&graph_to_json(g)).expect("serializable")
}
