//! Unit-capacity max-flow / min-cut (Edmonds–Karp).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Graph, NodeId, Path};
use crate::error::{Error, Result};

/// A minimum `ab`-cut: `side` contains `a` and not `b`, `value = |∂S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub value: usize,
    pub side: Vec<NodeId>,
}

impl CutResult {
    /// Edges with exactly one endpoint in `side`.
    pub fn boundary(&self, g: &Graph) -> Vec<EdgeId> {
        let mut inside = vec![false; g.node_count()];
        for &v in &self.side {
            inside[v] = true;
        }
        (0..g.edge_count())
            .filter(|&e| {
                let (u, v) = g.edge(e);
                inside[u] != inside[v]
            })
            .collect()
    }
}

/// Per-edge flow in `{-1, 0, 1}`; positive means along the stored orientation.
struct UnitFlow<'g> {
    g: &'g Graph,
    flow: Vec<i8>,
}

impl<'g> UnitFlow<'g> {
    fn residual(&self, from: NodeId, e: EdgeId) -> i8 {
        let (u, _) = self.g.edge(e);
        if from == u {
            1 - self.flow[e]
        } else {
            1 + self.flow[e]
        }
    }

    fn push(&mut self, from: NodeId, e: EdgeId) {
        let (u, _) = self.g.edge(e);
        self.flow[e] += if from == u { 1 } else { -1 };
    }

    /// Shortest augmenting path by BFS; returns predecessor `(node, edge)` links.
    fn augmenting_path(&self, a: NodeId, b: NodeId) -> Option<Vec<(NodeId, EdgeId)>> {
        let n = self.g.node_count();
        let mut pred: Vec<Option<(NodeId, EdgeId)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in self.g.neighbors(u) {
                if !seen[v] && self.residual(u, e) > 0 {
                    seen[v] = true;
                    pred[v] = Some((u, e));
                    if v == b {
                        let mut path = Vec::new();
                        let mut cur = b;
                        while let Some((p, e)) = pred[cur] {
                            path.push((p, e));
                            cur = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }

    fn residual_reachable(&self, a: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.g.node_count()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in self.g.neighbors(u) {
                if !seen[v] && self.residual(u, e) > 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

fn max_flow(g: &Graph, a: NodeId, b: NodeId) -> Result<(UnitFlow<'_>, usize)> {
    g.check_node(a)?;
    g.check_node(b)?;
    if a == b {
        return Err(Error::SameEndpoints);
    }
    let mut net = UnitFlow {
        g,
        flow: vec![0; g.edge_count()],
    };
    let mut value = 0;
    while let Some(path) = net.augmenting_path(a, b) {
        for (u, e) in path {
            net.push(u, e);
        }
        value += 1;
    }
    Ok((net, value))
}

/// `MC(a, b)`: minimum number of edges separating `a` from `b`.
///
/// The returned side is the set reachable from `a` in the final residual graph.
pub fn min_cut(g: &Graph, a: NodeId, b: NodeId) -> Result<CutResult> {
    let (net, value) = max_flow(g, a, b)?;
    let side = net
        .residual_reachable(a)
        .iter()
        .enumerate()
        .filter_map(|(v, &s)| s.then_some(v))
        .collect();
    Ok(CutResult { value, side })
}

/// Edge-disjoint `a`–`b` paths read off a maximum flow.
pub fn edge_disjoint_paths(g: &Graph, a: NodeId, b: NodeId) -> Result<Vec<Path>> {
    let (net, value) = max_flow(g, a, b)?;
    // Directed unit arcs carrying flow, as (tail, head, edge).
    let mut out_arcs: Vec<Vec<(NodeId, EdgeId)>> = vec![Vec::new(); g.node_count()];
    for (e, &f) in net.flow.iter().enumerate() {
        let (u, v) = g.edge(e);
        match f {
            1 => out_arcs[u].push((v, e)),
            -1 => out_arcs[v].push((u, e)),
            _ => {}
        }
    }
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut vertices = vec![a];
        let mut edges = Vec::new();
        let mut cur = a;
        while cur != b {
            let (next, e) = out_arcs[cur].pop().expect("flow is conserved");
            if let Some(pos) = vertices.iter().position(|&x| x == next) {
                // Drop the circulation closed by this arc.
                vertices.truncate(pos + 1);
                edges.truncate(pos);
            } else {
                vertices.push(next);
                edges.push(e);
            }
            cur = next;
        }
        paths.push(Path::from_parts(vertices, edges));
    }
    Ok(paths)
}
