use std::collections::VecDeque;

use super::{Graph, NodeId, Path};
use crate::error::{Error, Result};

/// Hop distances from `source` to every node.
pub fn bfs_hops(g: &Graph, source: NodeId) -> Result<Vec<usize>> {
    g.check_node(source)?;
    let mut dist = vec![usize::MAX; g.node_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// `ℓ(Γ(a, b))`: number of hops on a shortest `a`–`b` path.
pub fn shortest_path_hops(g: &Graph, a: NodeId, b: NodeId) -> Result<usize> {
    g.check_node(b)?;
    Ok(bfs_hops(g, a)?[b])
}

/// All simple `a`–`b` paths by depth-first backtracking, neighbors visited
/// in ascending index order. Fails once more than `cap` paths are found.
pub fn enumerate_simple_paths(g: &Graph, a: NodeId, b: NodeId, cap: usize) -> Result<Vec<Path>> {
    g.check_node(a)?;
    g.check_node(b)?;
    if a == b {
        return Err(Error::SameEndpoints);
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    let mut vertices = vec![a];
    let mut edges = Vec::new();
    on_path[a] = true;
    // Explicit stack of neighbor cursors avoids deep recursion on long paths.
    let mut cursors = vec![0usize];
    while let Some(cursor) = cursors.last_mut() {
        let u = *vertices.last().expect("stack holds a vertex");
        let nbrs = g.neighbors(u);
        if *cursor >= nbrs.len() {
            cursors.pop();
            on_path[u] = false;
            vertices.pop();
            edges.pop();
            continue;
        }
        let (v, e) = nbrs[*cursor];
        *cursor += 1;
        if on_path[v] {
            continue;
        }
        if v == b {
            if out.len() == cap {
                return Err(Error::PathCapExceeded { cap });
            }
            let mut vs = vertices.clone();
            vs.push(b);
            let mut es = edges.clone();
            es.push(e);
            out.push(Path::from_parts(vs, es));
            continue;
        }
        on_path[v] = true;
        vertices.push(v);
        edges.push(e);
        cursors.push(0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, parse_graph};

    #[test]
    fn hop_counts() {
        let p3 = parse_graph("a c\nc b").unwrap();
        assert_eq!(shortest_path_hops(&p3, 0, 2).unwrap(), 2);
        assert_eq!(shortest_path_hops(&p3, 1, 1).unwrap(), 0);
        let c6 = cycle_graph(6).unwrap();
        assert_eq!(shortest_path_hops(&c6, 2, 3).unwrap(), 1);
        assert_eq!(shortest_path_hops(&c6, 0, 3).unwrap(), 3);
        let k4 = complete_graph(4).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert_eq!(shortest_path_hops(&k4, a, b).unwrap(), 1);
                }
            }
        }
        assert!(shortest_path_hops(&k4, 0, 9).is_err());
    }

    #[test]
    fn path_counts() {
        let p3 = parse_graph("a c\nc b").unwrap();
        assert_eq!(enumerate_simple_paths(&p3, 0, 2, 10).unwrap().len(), 1);
        for n in 3..9 {
            let c = cycle_graph(n).unwrap();
            let paths = enumerate_simple_paths(&c, 0, 2, 10).unwrap();
            assert_eq!(paths.len(), 2);
            let mut hops: Vec<_> = paths.iter().map(Path::hops).collect();
            hops.sort_unstable();
            let mut expected = vec![2, n - 2];
            expected.sort_unstable();
            assert_eq!(hops, expected);
        }
        let k4 = complete_graph(4).unwrap();
        let paths = enumerate_simple_paths(&k4, 0, 1, 100).unwrap();
        assert_eq!(paths.len(), 5);
        assert!(paths
            .iter()
            .all(|p| p.is_simple() && p.start() == 0 && p.end() == 1));
        // Neighbor-ascending DFS order: 0-1 first.
        assert_eq!(paths[0].vertices(), &[0, 1]);
    }

    #[test]
    fn cap_and_endpoint_errors() {
        let k4 = complete_graph(4).unwrap();
        assert!(matches!(
            enumerate_simple_paths(&k4, 0, 1, 4),
            Err(Error::PathCapExceeded { cap: 4 })
        ));
        assert!(matches!(
            enumerate_simple_paths(&k4, 0, 0, 4),
            Err(Error::SameEndpoints)
        ));
    }
}
