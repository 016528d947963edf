//! Modulus of a finite path family by Lagrangian dual coordinate ascent.
//!
//! For paths `Γ'` with multipliers `λ ≥ 0`, let `s = Nᵀλ`. Stationarity of
//! the Lagrangian gives `ρ(e) = (s(e)/p)^{1/(p−1)}` and the concave dual
//!
//! ```text
//! g(λ) = Σ_γ λ_γ − (p − 1) Σ_e (s(e)/p)^{p/(p−1)}
//! ```
//!
//! with `∂g/∂λ_γ = 1 − ℓ_ρ(γ)`. Any `λ ≥ 0` gives `g(λ) ≤ Mod_p(Γ')`, and the
//! duality gap at `λ` is `E_p(ρ) − g(λ) = Σ_γ λ_γ (ℓ_ρ(γ) − 1)`.

use std::collections::HashSet;

use crate::graph::{EdgeId, Path};
use crate::linalg::{Cholesky, Matrix};

const NEWTON_STEPS_PER_ROUND: usize = 50;
/// Rounds without a 1% drop in the residual before giving up.
const STALL_ROUNDS: usize = 100;

#[derive(Clone, Debug)]
pub(crate) struct PathDual {
    p: f64,
    edge_count: usize,
    paths: Vec<Vec<EdgeId>>,
    known: HashSet<Vec<EdgeId>>,
    lambda: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct InnerStats {
    pub sweeps: usize,
    pub residual: f64,
}

impl PathDual {
    pub fn new(p: f64, edge_count: usize) -> Self {
        assert!(p > 1.0 && p.is_finite());
        PathDual {
            p,
            edge_count,
            paths: Vec::new(),
            known: HashSet::new(),
            lambda: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    #[cfg(test)]
    pub fn contains(&self, path: &Path) -> bool {
        self.known.contains(&canonical(path))
    }

    /// Adds `path` with the given starting multiplier; returns false if already present.
    pub fn push(&mut self, path: &Path, lambda: f64) -> bool {
        let key = canonical(path);
        if !self.known.insert(key.clone()) {
            return false;
        }
        self.paths.push(key);
        self.lambda.push(lambda.max(0.0));
        true
    }

    fn load(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.edge_count];
        for (edges, &l) in self.paths.iter().zip(&self.lambda) {
            if l > 0.0 {
                for &e in edges {
                    s[e] += l;
                }
            }
        }
        s
    }

    fn rho_of(&self, s: f64) -> f64 {
        if s <= 0.0 {
            0.0
        } else {
            (s / self.p).powf(1.0 / (self.p - 1.0))
        }
    }

    /// Stationary density `ρ(λ)`.
    pub fn density(&self) -> Vec<f64> {
        self.load().into_iter().map(|s| self.rho_of(s)).collect()
    }

    /// `g(λ)`, a lower bound on the modulus of the family.
    pub fn dual_value(&self) -> f64 {
        let q = self.p / (self.p - 1.0);
        let s = self.load();
        let penalty: f64 = s
            .iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| (v / self.p).powf(q))
            .sum();
        let total: f64 = self.lambda.iter().sum();
        total - (self.p - 1.0) * penalty
    }

    /// KKT residual: `|1 − ℓ_γ|` on paths with `λ_γ > 0`, `max(0, 1 − ℓ_γ)` otherwise.
    fn residual(&self, rho: &[f64]) -> f64 {
        self.paths
            .iter()
            .zip(&self.lambda)
            .map(|(edges, &l)| {
                let len: f64 = edges.iter().map(|&e| rho[e]).sum();
                if l > 0.0 {
                    (1.0 - len).abs()
                } else {
                    (1.0 - len).max(0.0)
                }
            })
            .fold(0.0, f64::max)
    }

    /// Alternates cyclic coordinate sweeps with projected Newton steps until
    /// the KKT residual is at most `tol` or `max_rounds` sweeps have run.
    pub fn solve(&mut self, tol: f64, max_rounds: usize) -> InnerStats {
        let mut stats = InnerStats::default();
        let mut best = f64::INFINITY;
        let mut stalled = 0;
        for round in 0..max_rounds {
            self.sweep();
            stats.sweeps = round + 1;
            stats.residual = self.residual(&self.density());
            if stats.residual <= tol {
                break;
            }
            if stats.residual < 0.99 * best {
                best = stats.residual;
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= STALL_ROUNDS {
                    break;
                }
            }
            for _ in 0..NEWTON_STEPS_PER_ROUND {
                if !self.newton_step() {
                    break;
                }
                stats.residual = self.residual(&self.density());
                if stats.residual <= tol {
                    return stats;
                }
            }
        }
        stats
    }

    fn sweep(&mut self) {
        let mut s = self.load();
        for k in 0..self.paths.len() {
            let edges = &self.paths[k];
            let old = self.lambda[k];
            let base: Vec<f64> = edges.iter().map(|&e| (s[e] - old).max(0.0)).collect();
            let new = self.coordinate_optimum(&base);
            for (&e, b) in edges.iter().zip(&base) {
                s[e] = b + new;
            }
            self.lambda[k] = new;
        }
    }

    /// One projected Newton ascent step on `g`; false if no progress was made.
    ///
    /// Paths at `λ = 0` whose constraint is already satisfied stay fixed; on
    /// the rest the step solves `(N D Nᵀ + μI) d = 1 − ℓ` with
    /// `D = diag(dρ/ds)`, followed by a projected backtracking search.
    fn newton_step(&mut self) -> bool {
        let s = self.load();
        let rho: Vec<f64> = s.iter().map(|&v| self.rho_of(v)).collect();
        let grad: Vec<f64> = self
            .paths
            .iter()
            .map(|edges| 1.0 - edges.iter().map(|&e| rho[e]).sum::<f64>())
            .collect();
        let free: Vec<usize> = (0..self.paths.len())
            .filter(|&k| self.lambda[k] > 0.0 || grad[k] > 0.0)
            .collect();
        if free.is_empty() {
            return false;
        }
        let r = 1.0 / (self.p - 1.0);
        let slope: Vec<f64> = s
            .iter()
            .zip(&rho)
            .map(|(&sv, &rv)| if sv > 0.0 { r * rv / sv } else { 0.0 })
            .collect();
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); self.edge_count];
        for (i, &k) in free.iter().enumerate() {
            for &e in &self.paths[k] {
                through[e].push(i);
            }
        }
        let m = free.len();
        let mut hess = Matrix::zeros(m, m);
        for (e, list) in through.iter().enumerate() {
            let d = slope[e];
            if d == 0.0 {
                continue;
            }
            for &i in list {
                for &j in list {
                    hess[(i, j)] += d;
                }
            }
        }
        let max_diag = (0..m).map(|i| hess[(i, i)]).fold(0.0, f64::max);
        if !(max_diag > 0.0 && max_diag.is_finite()) {
            return false;
        }
        let rhs: Vec<f64> = free.iter().map(|&k| grad[k]).collect();
        let mut ridge = 1e-12 * max_diag;
        let dir = loop {
            let mut h = hess.clone();
            for i in 0..m {
                h[(i, i)] += ridge;
            }
            if let Ok(ch) = Cholesky::new(&h) {
                break ch.solve(&rhs);
            }
            ridge *= 100.0;
            if ridge > max_diag {
                return false;
            }
        };

        let before = self.dual_value();
        let before_residual = self.residual(&rho);
        let saved = self.lambda.clone();
        let mut alpha = 1.0;
        for _ in 0..40 {
            for (i, &k) in free.iter().enumerate() {
                self.lambda[k] = (saved[k] + alpha * dir[i]).max(0.0);
            }
            let moved: f64 = free
                .iter()
                .map(|&k| grad[k] * (self.lambda[k] - saved[k]))
                .sum();
            let after = self.dual_value();
            if after >= before + 1e-4 * moved - 1e-15 * before.abs() && after > before {
                return true;
            }
            // Near the optimum `g` is flat to rounding; fall back to the residual.
            if (after - before).abs() <= 1e-13 * before.abs()
                && self.residual(&self.density()) < 0.5 * before_residual
            {
                return true;
            }
            alpha *= 0.5;
        }
        self.lambda = saved;
        false
    }

    /// Maximizes `g` along one coordinate: the `t ≥ 0` with
    /// `Σ_e ((base_e + t)/p)^{1/(p−1)} = 1`, or 0 if the path is already long enough.
    fn coordinate_optimum(&self, base: &[f64]) -> f64 {
        let p = self.p;
        let r = 1.0 / (p - 1.0);
        let length = |t: f64| -> (f64, f64) {
            let mut f = 0.0;
            let mut df = 0.0;
            for &b in base {
                let x = (b + t) / p;
                if x > 0.0 {
                    let xr = x.powf(r);
                    f += xr;
                    df += r * xr / (x * p);
                }
            }
            (f, df)
        };
        if length(0.0).0 >= 1.0 {
            return 0.0;
        }
        let mut lo = 0.0;
        // At t = p·|γ|^{1−p} every term is at least 1/|γ|, so the length is at least 1.
        let mut hi = p * (base.len() as f64).powf(1.0 - p);
        let mut t = hi;
        for _ in 0..200 {
            let (f, df) = length(t);
            if f > 1.0 {
                hi = t;
            } else {
                lo = t;
            }
            if (f - 1.0).abs() <= 4.0 * f64::EPSILON || hi - lo <= 4.0 * f64::EPSILON * hi {
                break;
            }
            let newton = t - (f - 1.0) / df;
            t = if df > 0.0 && newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        t
    }
}

fn canonical(path: &Path) -> Vec<EdgeId> {
    path.edges().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, enumerate_simple_paths, parallel_paths};
    use crate::modulus::energy::energy;

    fn solve_all(g: &crate::graph::Graph, a: usize, b: usize, p: f64) -> (f64, f64, Vec<f64>) {
        let mut dual = PathDual::new(p, g.edge_count());
        for path in enumerate_simple_paths(g, a, b, 100_000).unwrap() {
            dual.push(&path, 0.0);
        }
        let stats = dual.solve(1e-13, 100_000);
        assert!(stats.residual <= 1e-13, "residual {}", stats.residual);
        let rho = dual.density();
        (dual.dual_value(), energy(&rho, p), rho)
    }

    #[test]
    fn parallel_paths_closed_form() {
        for (k, l) in [(2usize, 3usize), (3, 2)] {
            let g = parallel_paths(k, l).unwrap();
            for p in [1.5, 2.0, 3.0] {
                let (lower, upper, rho) = solve_all(&g, 0, 1, p);
                let exact = k as f64 / (l as f64).powf(p - 1.0);
                assert!(
                    (lower - exact).abs() < 1e-10 * exact,
                    "{k} {l} {p}: {lower}"
                );
                assert!((upper - exact).abs() < 1e-10 * exact);
                assert!(rho.iter().all(|&r| (r - 1.0 / l as f64).abs() < 1e-10));
            }
        }
    }

    #[test]
    fn cycle_and_complete_closed_forms() {
        let c6 = cycle_graph(6).unwrap();
        let (lower, _, _) = solve_all(&c6, 0, 1, 2.0);
        assert!((lower - 1.2).abs() < 1e-10);
        let k5 = complete_graph(5).unwrap();
        let (lower, _, _) = solve_all(&k5, 0, 1, 3.0);
        let exact = 1.0 + 3.0 / 4.0;
        assert!((lower - exact).abs() < 1e-9, "{lower}");
    }

    #[test]
    fn duplicate_paths_are_ignored() {
        let c4 = cycle_graph(4).unwrap();
        let paths = enumerate_simple_paths(&c4, 0, 2, 10).unwrap();
        let mut dual = PathDual::new(2.0, 4);
        assert!(dual.push(&paths[0], 0.0));
        assert!(!dual.push(&paths[0], 1.0));
        assert!(dual.contains(&paths[0]));
        assert!(!dual.contains(&paths[1]));
        assert_eq!(dual.len(), 1);
    }
}
