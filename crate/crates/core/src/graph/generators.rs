//! Deterministic graph families and the seeded Erdős–Rényi generator.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

const MAX_ER_ATTEMPTS: usize = 1_000_000;

/// Path graph `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// Cycle graph `C_n`, edges `(i, i+1 mod n)`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a cycle needs at least 3 nodes, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Complete graph `K_n` with edges in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// The square `a - b - c - d - a`.
pub fn square_graph() -> Graph {
    let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
    Graph::with_labels(labels, &[(0, 1), (1, 2), (2, 3), (3, 0)]).expect("square is valid")
}

/// `k` internally disjoint paths of `hops` edges each between `s = 0` and `t = 1`.
pub fn parallel_paths(k: usize, hops: usize) -> Result<Graph> {
    if k == 0 || hops == 0 {
        return Err(Error::InvalidArgument(
            "need k >= 1 paths of hops >= 1".into(),
        ));
    }
    if hops == 1 && k > 1 {
        return Err(Error::InvalidArgument(
            "parallel single-edge paths would form a multigraph".into(),
        ));
    }
    let mut labels = vec!["s".to_string(), "t".to_string()];
    let mut edges = Vec::new();
    for path in 0..k {
        let mut prev: NodeId = 0;
        for step in 1..hops {
            let id = labels.len();
            labels.push(format!("p{path}_{step}"));
            edges.push((prev, id));
            prev = id;
        }
        edges.push((prev, 1));
    }
    Graph::with_labels(labels, &edges)
}

/// `rows × cols` grid with horizontal and vertical neighbors, labels `"r,c"` in row-major order.
pub fn grid_graph(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(
            "grid dimensions must be positive".into(),
        ));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut labels = Vec::with_capacity(rows * cols);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            labels.push(format!("{r},{c}"));
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::with_labels(labels, &edges)
}

/// Uniform double in `[0, 1)` from the top 53 bits of the next output.
fn next_unit(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Connected Erdős–Rényi graph `G(n, q)` with `q = expected_degree / (n - 1)`.
///
/// The stream is SplitMix64 seeded with `seed`. Each draw visits the pairs
/// `(i, j)`, `i < j`, in lexicographic order and keeps the edge when the
/// next uniform double is below `q`. Disconnected draws are discarded and
/// the same stream keeps going, so the result is a pure function of
/// `(n, expected_degree, seed)`.
pub fn erdos_renyi_connected(n: usize, expected_degree: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 nodes, got {n}"
        )));
    }
    let max_degree = (n - 1) as f64;
    if !(expected_degree > 0.0 && expected_degree <= max_degree) {
        return Err(Error::InvalidArgument(format!(
            "expected degree must lie in (0, {max_degree}], got {expected_degree}"
        )));
    }
    let q = expected_degree / max_degree;
    let mut rng = SplitMix64::seed_from_u64(seed);
    for _ in 0..MAX_ER_ATTEMPTS {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if next_unit(&mut rng) < q {
                    edges.push((i, j));
                }
            }
        }
        match Graph::from_edges(n, &edges) {
            Ok(g) => return Ok(g),
            Err(Error::Disconnected { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ER_ATTEMPTS,
    })
}

/// Derives `count` per-item seeds from one master seed.
pub fn derive_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = SplitMix64::seed_from_u64(master);
    (0..count).map(|_| rng.next_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference SplitMix64, written out independently of the crate.
    fn reference_splitmix(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    #[test]
    fn stream_is_textbook_splitmix64() {
        for seed in [0u64, 1, 42, u64::MAX] {
            let mut ours = SplitMix64::seed_from_u64(seed);
            let mut state = seed;
            for _ in 0..8 {
                assert_eq!(ours.next_u64(), reference_splitmix(&mut state));
            }
        }
        let mut z = SplitMix64::seed_from_u64(0);
        assert_eq!(z.next_u64(), 0xe220_a839_7b1d_cdaf);
    }

    #[test]
    fn families_have_expected_shape() {
        assert_eq!(path_graph(3).unwrap().edge_count(), 2);
        assert_eq!(cycle_graph(6).unwrap().edge_count(), 6);
        assert_eq!(complete_graph(5).unwrap().edge_count(), 10);
        let par = parallel_paths(3, 2).unwrap();
        assert_eq!((par.node_count(), par.edge_count()), (5, 6));
        let grid = grid_graph(3, 3).unwrap();
        assert_eq!((grid.node_count(), grid.edge_count()), (9, 12));
        assert_eq!(grid.label(5), "1,2");
        assert!(cycle_graph(2).is_err());
        assert!(parallel_paths(2, 1).is_err());
    }

    #[test]
    fn er_is_reproducible_and_connected() {
        let a = erdos_renyi_connected(10, 6.0, 7).unwrap();
        let b = erdos_renyi_connected(10, 6.0, 7).unwrap();
        assert_eq!(a.edge_list_text(), b.edge_list_text());
        assert_eq!(a.node_count(), 10);
        let c = erdos_renyi_connected(10, 6.0, 8).unwrap();
        assert_ne!(a.edge_list_text(), c.edge_list_text());
    }

    #[test]
    fn er_two_nodes_is_k2() {
        for seed in 0..5 {
            let g = erdos_renyi_connected(2, 1.0, seed).unwrap();
            assert_eq!(g.edges(), &[(0, 1)]);
        }
    }

    #[test]
    fn er_rejects_bad_degree() {
        assert!(erdos_renyi_connected(5, 0.0, 1).is_err());
        assert!(erdos_renyi_connected(10, 20.0, 1).is_err());
        assert!(erdos_renyi_connected(1, 0.5, 1).is_err());
    }
}
