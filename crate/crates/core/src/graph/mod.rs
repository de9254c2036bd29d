//! Simple graphs on group elements with fixed-width bit rows.

mod build;
mod export;
mod iso;
mod product;

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use build::{difference_graph, enhanced_power_graph, nilpotent_difference_adjacent, power_graph};
pub use export::{to_dot, to_json, GraphJson};
pub use iso::{graphs_isomorphic, graphs_isomorphic_with_budget, IsoOutcome, DEFAULT_NODE_BUDGET};
pub use product::strong_product;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Power,
    Enhanced,
    Difference,
    StrongProduct,
    Plain,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Power => "power",
            GraphKind::Enhanced => "enhanced",
            GraphKind::Difference => "difference",
            GraphKind::StrongProduct => "strong-product",
            GraphKind::Plain => "plain",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// Element index in the source group, or a plain index for abstract graphs.
    pub element: usize,
    pub label: String,
    /// Element order; 0 for abstract graphs.
    pub order: u32,
}

/// A simple undirected graph. Vertex `v` is the `v`-th entry of
/// [`Graph::vertices`]; vertices are kept in ascending element order.
#[derive(Debug, Clone)]
pub struct Graph {
    pub name: String,
    pub kind: GraphKind,
    vertices: Vec<Vertex>,
    adj: Vec<FixedBitSet>,
    removed: Vec<Vertex>,
}

impl Graph {
    pub(crate) fn from_rows(
        name: String,
        kind: GraphKind,
        vertices: Vec<Vertex>,
        adj: Vec<FixedBitSet>,
        removed: Vec<Vertex>,
    ) -> Graph {
        debug_assert_eq!(vertices.len(), adj.len());
        Graph { name, kind, vertices, adj, removed }
    }

    /// Abstract graph on `0..n`. Loops are dropped and edges are symmetrized.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        let vertices = (0..n)
            .map(|i| Vertex { element: i, label: i.to_string(), order: 0 })
            .collect();
        Graph::from_rows(String::new(), GraphKind::Plain, vertices, adj, Vec::new())
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn removed_vertices(&self) -> &[Vertex] {
        &self.removed
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        self.adj[v].ones().collect()
    }

    pub fn closed_neighbors(&self, v: usize) -> FixedBitSet {
        let mut row = self.adj[v].clone();
        row.insert(v);
        row
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Vertex carrying group element `element`, if it survived construction.
    pub fn vertex_of(&self, element: usize) -> Option<usize> {
        self.vertices.binary_search_by_key(&element, |v| v.element).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(self.n());
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for v in self.adj[u].ones() {
                if !seen.put(v) {
                    stack.push(v);
                }
            }
        }
        seen.count_ones(..) == self.n()
    }

    /// Simple: no loops and symmetric rows.
    pub fn is_simple(&self) -> bool {
        (0..self.n()).all(|u| !self.adj[u].contains(u) && self.adj[u].ones().all(|v| self.adj[v].contains(u)))
    }

    /// The graph with vertices renamed by `perm` (old vertex `v` becomes `perm[v]`).
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        let edges = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.n(), edges)
    }

    /// Whether `map` (vertex of `self` to vertex of `other`) is an isomorphism.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n() != other.n() || map.len() != self.n() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(other.n());
        if map.iter().any(|&w| w >= other.n() || hit.put(w)) {
            return false;
        }
        self.edges().iter().all(|&(u, v)| other.adjacent(map[u], map[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_queries() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 2)]);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_simple());
        assert!(!g.is_connected());
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.neighbor_list(1), vec![0, 2]);
        assert!(g.closed_neighbors(1).contains(1));
    }

    #[test]
    fn isomorphism_map_check() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let q3 = Graph::from_edges(3, [(1, 0), (0, 2)]);
        assert!(p3.is_isomorphism(&q3, &[1, 0, 2]));
        assert!(!p3.is_isomorphism(&q3, &[0, 1, 2]));
        assert!(!p3.is_isomorphism(&q3, &[0, 0, 2]));
    }
}
