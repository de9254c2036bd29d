use std::fmt::Write;

use serde::Serialize;

use super::{Graph, Vertex};

#[derive(Debug, Serialize)]
pub struct GraphJson<'a> {
    pub spec: &'a str,
    pub kind: &'static str,
    pub vertices: &'a [Vertex],
    /// Pairs of positions in `vertices`.
    pub edges: Vec<(usize, usize)>,
    pub removed_vertices: &'a [Vertex],
}

pub fn to_json<'a>(graph: &'a Graph, spec: &'a str) -> GraphJson<'a> {
    GraphJson {
        spec,
        kind: graph.kind.as_str(),
        vertices: graph.vertices(),
        edges: graph.edges(),
        removed_vertices: graph.removed_vertices(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz document. Node ids are vertex positions; labels carry the element
/// label and its order.
pub fn to_dot(graph: &Graph, spec: &str) -> String {
    let mut out = String::new();
    let name = format!("{spec} {}", graph.kind.as_str());
    writeln!(out, "graph {} {{", quote(&name)).unwrap();
    for (i, v) in graph.vertices().iter().enumerate() {
        let label = format!("{} (o={})", v.label, v.order);
        writeln!(out, "  {i} [label={}];", quote(&label)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
