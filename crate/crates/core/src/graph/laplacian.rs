use super::{Graph, NodeId};
use crate::error::{Error, Result};
use crate::linalg::{Cholesky, Matrix};

/// Combinatorial Laplacian `L = D − A`.
pub fn laplacian(g: &Graph) -> Matrix {
    let n = g.node_count();
    let mut l = Matrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
    }
    l
}

/// Factorization of the deflated Laplacian `L + 11ᵀ/n`.
///
/// On a connected graph this matrix is positive definite, and for any
/// right-hand side summing to zero its solution is the mean-zero solution
/// of `L x = r`. No pseudoinverse is formed.
#[derive(Clone, Debug)]
pub struct ResistanceSolver {
    chol: Cholesky,
}

impl ResistanceSolver {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.node_count();
        let mut m = laplacian(g);
        let shift = 1.0 / n as f64;
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += shift;
            }
        }
        Ok(ResistanceSolver {
            chol: Cholesky::new(&m)?,
        })
    }

    /// Mean-zero potential `x` with `L x = δ_b − δ_a`.
    pub fn unit_current_potential(&self, a: NodeId, b: NodeId) -> Vec<f64> {
        let mut rhs = vec![0.0; self.chol.dim()];
        rhs[b] += 1.0;
        rhs[a] -= 1.0;
        self.chol.solve(&rhs)
    }

    pub fn resistance(&self, a: NodeId, b: NodeId) -> f64 {
        if a == b {
            return 0.0;
        }
        let x = self.unit_current_potential(a, b);
        x[b] - x[a]
    }

    /// All pairwise effective resistances from one inverse.
    pub fn all_pairs(&self) -> Matrix {
        let inv = self.chol.inverse();
        let n = inv.rows();
        let mut r = Matrix::zeros(n, n);
        for a in 0..n {
            for b in (a + 1)..n {
                let v = inv[(a, a)] + inv[(b, b)] - 2.0 * inv[(a, b)];
                r[(a, b)] = v;
                r[(b, a)] = v;
            }
        }
        r
    }
}

/// `R_eff(a, b) = (δ_b − δ_a)ᵀ L⁺ (δ_b − δ_a)`; zero when `a == b`.
pub fn effective_resistance(g: &Graph, a: NodeId, b: NodeId) -> Result<f64> {
    g.check_node(a)?;
    g.check_node(b)?;
    if a == b {
        return Ok(0.0);
    }
    let solver = ResistanceSolver::new(g).map_err(|_| {
        Error::InvalidArgument("Laplacian deflation failed; graph must be connected".into())
    })?;
    Ok(solver.resistance(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, parse_graph, path_graph};

    #[test]
    fn laplacian_small_graphs() {
        let p3 = parse_graph("a c\nc b").unwrap();
        assert_eq!(
            laplacian(&p3).to_rows(),
            vec![
                vec![1.0, -1.0, 0.0],
                vec![-1.0, 2.0, -1.0],
                vec![0.0, -1.0, 1.0]
            ]
        );
        let k2 = path_graph(2).unwrap();
        assert_eq!(
            laplacian(&k2).to_rows(),
            vec![vec![1.0, -1.0], vec![-1.0, 1.0]]
        );
        let c4 = cycle_graph(4).unwrap();
        let l = laplacian(&c4);
        for i in 0..4 {
            assert_eq!(l[(i, i)], 2.0);
            assert_eq!(l[(i, (i + 1) % 4)], -1.0);
            assert_eq!(l[(i, (i + 2) % 4)], 0.0);
            assert_eq!(l.row(i).iter().sum::<f64>(), 0.0);
        }
    }

    #[test]
    fn resistances() {
        let p3 = parse_graph("a c\nc b").unwrap();
        assert!((effective_resistance(&p3, 0, 2).unwrap() - 2.0).abs() < 1e-12);
        let c4 = cycle_graph(4).unwrap();
        assert!((effective_resistance(&c4, 0, 1).unwrap() - 0.75).abs() < 1e-12);
        let k4 = complete_graph(4).unwrap();
        assert!((effective_resistance(&k4, 1, 3).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(effective_resistance(&k4, 2, 2).unwrap(), 0.0);
    }

    #[test]
    fn all_pairs_matches_single_solves() {
        let c5 = cycle_graph(5).unwrap();
        let solver = ResistanceSolver::new(&c5).unwrap();
        let all = solver.all_pairs();
        for a in 0..5 {
            for b in 0..5 {
                assert!((all[(a, b)] - solver.resistance(a, b)).abs() < 1e-12);
            }
        }
        // Series-parallel: 1 ∥ 4 = 0.8 for adjacent nodes.
        assert!((all[(0, 1)] - 0.8).abs() < 1e-12);
    }
}
