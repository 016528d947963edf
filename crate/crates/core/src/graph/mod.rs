//! Simple undirected connected graphs and the classical solvers behind the
//! `p = 1`, `p = 2` and `p = ∞` special cases.

mod flow;
pub mod generators;
mod laplacian;
mod parse;
mod search;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use flow::{edge_disjoint_paths, min_cut, CutResult};
pub use generators::{
    complete_graph, cycle_graph, derive_seeds, erdos_renyi_connected, grid_graph, parallel_paths,
    path_graph, square_graph,
};
pub use laplacian::{effective_resistance, laplacian, ResistanceSolver};
pub use parse::{parse_graph, parse_graph_json, parse_graph_text};
pub use search::{bfs_hops, enumerate_simple_paths, shortest_path_hops};

pub type NodeId = usize;
pub type EdgeId = usize;

/// A simple, finite, undirected and connected graph.
///
/// Nodes are dense indices `0..node_count`; every node carries a string label.
/// Adjacency lists are sorted by neighbor index so traversals are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId)>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    edge_lookup: HashMap<(NodeId, NodeId), EdgeId>,
}

impl Graph {
    /// Builds a graph with labels `"0", "1", ...`.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Graph::with_labels(labels, edges)
    }

    pub fn with_labels(labels: Vec<String>, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let node_count = labels.len();
        if node_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); node_count];
        let mut edge_lookup = HashMap::with_capacity(edges.len());
        let mut stored = Vec::with_capacity(edges.len());
        for (line, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= node_count {
                    return Err(Error::InvalidNode {
                        index: x,
                        node_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: line + 1,
                    label: labels[u].clone(),
                });
            }
            let key = (u.min(v), u.max(v));
            if edge_lookup.contains_key(&key) {
                return Err(Error::DuplicateEdge {
                    line: line + 1,
                    u: labels[u].clone(),
                    v: labels[v].clone(),
                });
            }
            let id = stored.len();
            edge_lookup.insert(key, id);
            stored.push((u, v));
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let g = Graph {
            labels,
            edges: stored,
            adjacency,
            edge_lookup,
        };
        g.check_connected()?;
        Ok(g)
    }

    fn check_connected(&self) -> Result<()> {
        let seen = self.reachable_from(0);
        if let Some(stray) = seen.iter().position(|&s| !s) {
            return Err(Error::Disconnected {
                components: self.component_count(),
                root: self.labels[0].clone(),
                stray: self.labels[stray].clone(),
            });
        }
        Ok(())
    }

    fn reachable_from(&self, root: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn component_count(&self) -> usize {
        let mut comp = vec![false; self.node_count()];
        let mut count = 0;
        for start in 0..self.node_count() {
            if comp[start] {
                continue;
            }
            count += 1;
            let seen = self.reachable_from(start);
            for (c, s) in comp.iter_mut().zip(seen) {
                *c |= s;
            }
        }
        count
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    /// `(neighbor, edge)` pairs sorted by neighbor index.
    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        self.edge_lookup.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u]
    }

    pub fn node_by_label(&self, label: &str) -> Result<NodeId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check_node(&self, u: NodeId) -> Result<()> {
        if u < self.node_count() {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                index: u,
                node_count: self.node_count(),
            })
        }
    }

    /// Edge list as label pairs, in edge-index order.
    pub fn edge_list_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&self.labels[u]);
            out.push(' ');
            out.push_str(&self.labels[v]);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.labels,
            "edges": self
                .edges
                .iter()
                .map(|&(u, v)| [&self.labels[u], &self.labels[v]])
                .collect::<Vec<_>>(),
        })
    }
}

/// A nonnegative cost per edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Density(Vec<f64>);

impl Density {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::NegativeDensity { index, value });
        }
        Ok(Density(values))
    }

    pub fn for_graph(g: &Graph, values: Vec<f64>) -> Result<Self> {
        if values.len() != g.edge_count() {
            return Err(Error::DensityLength {
                expected: g.edge_count(),
                got: values.len(),
            });
        }
        Density::new(values)
    }

    pub fn constant(edge_count: usize, value: f64) -> Self {
        assert!(value.is_finite() && value >= 0.0);
        Density(vec![value; edge_count])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> Density {
        assert!(factor.is_finite() && factor >= 0.0);
        Density(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// A walk given as alternating vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<NodeId>,
    edges: Vec<EdgeId>,
}

impl Path {
    /// Builds the walk through `vertices`, looking up each hop's edge.
    pub fn from_vertices(g: &Graph, vertices: Vec<NodeId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument(
                "a path needs at least one vertex".into(),
            ));
        }
        for &v in &vertices {
            g.check_node(v)?;
        }
        let edges = vertices
            .windows(2)
            .map(|w| {
                g.edge_between(w[0], w[1]).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "no edge between `{}` and `{}`",
                        g.label(w[0]),
                        g.label(w[1])
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path { vertices, edges })
    }

    /// Builds a path from labels, e.g. `["a", "c", "b"]`.
    pub fn from_labels(g: &Graph, labels: &[&str]) -> Result<Self> {
        let vertices = labels
            .iter()
            .map(|l| g.node_by_label(l))
            .collect::<Result<Vec<_>>>()?;
        Path::from_vertices(g, vertices)
    }

    pub(crate) fn from_parts(vertices: Vec<NodeId>, edges: Vec<EdgeId>) -> Self {
        debug_assert_eq!(vertices.len(), edges.len() + 1);
        Path { vertices, edges }
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn start(&self) -> NodeId {
        self.vertices[0]
    }

    pub fn end(&self) -> NodeId {
        *self.vertices.last().expect("non-empty path")
    }

    pub fn hops(&self) -> usize {
        self.edges.len()
    }

    /// Traversal counts `N(γ, e)` over all edges of the graph.
    pub fn usage(&self, edge_count: usize) -> Vec<u32> {
        let mut n = vec![0; edge_count];
        for &e in &self.edges {
            n[e] += 1;
        }
        n
    }

    /// `ℓ_ρ(γ)`, the total cost of the walk under `rho`.
    pub fn length(&self, rho: &[f64]) -> f64 {
        self.edges.iter().map(|&e| rho[e]).sum()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.vertices.iter().map(|&v| g.label(v)).collect()
    }
}
