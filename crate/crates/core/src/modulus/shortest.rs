use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Density, EdgeId, Graph, NodeId, Path};

#[derive(Clone, Copy, Debug, PartialEq)]
struct Key {
    dist: f64,
    hops: usize,
    node: NodeId,
}

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.hops.cmp(&other.hops))
            .then(self.node.cmp(&other.node))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn vertex_sequence(pred: &[Option<(NodeId, EdgeId)>], mut v: NodeId) -> Vec<NodeId> {
    let mut seq = vec![v];
    while let Some((u, _)) = pred[v] {
        seq.push(u);
        v = u;
    }
    seq.reverse();
    seq
}

/// Minimum-cost `a`–`b` path under edge costs `rho` (Dijkstra), and its
/// cost `ℓ_ρ(Γ(a, b))`.
///
/// Ties are broken by hop count, then by the lexicographically smallest
/// vertex sequence.
pub fn rho_shortest_path(g: &Graph, rho: &Density, a: NodeId, b: NodeId) -> Result<(Path, f64)> {
    if rho.len() != g.edge_count() {
        return Err(Error::DensityLength {
            expected: g.edge_count(),
            got: rho.len(),
        });
    }
    shortest_path_by_cost(g, rho.values(), a, b)
}

pub(crate) fn shortest_path_by_cost(
    g: &Graph,
    cost: &[f64],
    a: NodeId,
    b: NodeId,
) -> Result<(Path, f64)> {
    g.check_node(a)?;
    g.check_node(b)?;
    if a == b {
        return Err(Error::SameEndpoints);
    }
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![usize::MAX; n];
    let mut pred: Vec<Option<(NodeId, EdgeId)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[a] = 0.0;
    hops[a] = 0;
    heap.push(Reverse(Key {
        dist: 0.0,
        hops: 0,
        node: a,
    }));
    while let Some(Reverse(Key { node: u, .. })) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == b {
            break;
        }
        for &(v, e) in g.neighbors(u) {
            if done[v] {
                continue;
            }
            let nd = dist[u] + cost[e];
            let nh = hops[u] + 1;
            let better = match nd.total_cmp(&dist[v]).then(nh.cmp(&hops[v])) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    let mut via_u = vertex_sequence(&pred, u);
                    via_u.push(v);
                    via_u < vertex_sequence(&pred, v)
                }
            };
            if better {
                dist[v] = nd;
                hops[v] = nh;
                pred[v] = Some((u, e));
                heap.push(Reverse(Key {
                    dist: nd,
                    hops: nh,
                    node: v,
                }));
            }
        }
    }
    let mut vertices = vec![b];
    let mut edges = Vec::new();
    let mut cur = b;
    while let Some((u, e)) = pred[cur] {
        vertices.push(u);
        edges.push(e);
        cur = u;
    }
    vertices.reverse();
    edges.reverse();
    Ok((Path::from_parts(vertices, edges), dist[b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, parse_graph};

    #[test]
    fn unit_costs_follow_hops() {
        let p3 = parse_graph("a c\nc b").unwrap();
        let (path, len) = rho_shortest_path(&p3, &Density::constant(2, 1.0), 0, 2).unwrap();
        assert_eq!(path.labels(&p3), ["a", "c", "b"]);
        assert_eq!(len, 2.0);
    }

    #[test]
    fn zero_costs_prefer_fewest_hops() {
        let c6 = cycle_graph(6).unwrap();
        let (path, len) = rho_shortest_path(&c6, &Density::constant(6, 0.0), 0, 2).unwrap();
        assert_eq!(len, 0.0);
        assert_eq!(path.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn extremal_cycle_density_makes_both_arcs_unit_length() {
        // C_4 with a = 0, c = 1 adjacent: ρ(a,c) = 1, ρ = 1/3 on the other three edges.
        let c4 = cycle_graph(4).unwrap();
        let mut rho = vec![1.0 / 3.0; 4];
        rho[c4.edge_between(0, 1).unwrap()] = 1.0;
        let (path, len) = rho_shortest_path(&c4, &Density::new(rho).unwrap(), 0, 1).unwrap();
        assert!((len - 1.0).abs() < 1e-12);
        // Both arcs cost 1; the one-hop arc wins the tie.
        assert_eq!(path.vertices(), &[0, 1]);
    }

    #[test]
    fn lexicographic_tie_break() {
        let k4 = complete_graph(4).unwrap();
        let mut rho = vec![1.0; 6];
        rho[k4.edge_between(0, 3).unwrap()] = 2.0;
        // Paths 0-1-3 and 0-2-3 both cost 2 with 2 hops; 0-3 costs 2 with 1 hop.
        let (path, _) = rho_shortest_path(&k4, &Density::new(rho.clone()).unwrap(), 0, 3).unwrap();
        assert_eq!(path.vertices(), &[0, 3]);
        rho[k4.edge_between(0, 3).unwrap()] = 3.0;
        let (path, len) = rho_shortest_path(&k4, &Density::new(rho).unwrap(), 0, 3).unwrap();
        assert_eq!(len, 2.0);
        assert_eq!(path.vertices(), &[0, 1, 3]);
    }
}
