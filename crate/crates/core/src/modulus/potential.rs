use super::dual::PathDual;
use super::greedy::{Bracket, GreedyRun};
use super::{check_endpoints, check_interior, ModulusResult, SolvedBy, SolverConfig};
use crate::error::Result;
use crate::graph::{Graph, NodeId, Path, ResistanceSolver};
use crate::linalg::{dot, Cholesky, Matrix};

const MAX_NEWTON_STEPS: usize = 100;
const MIN_EPSILON: f64 = 1e-12;
const REFINE_ROUNDS: usize = 200;

/// `|t|^p` smoothed to `(t² + ε²)^{p/2} − ε^p`.
#[derive(Clone, Copy, Debug)]
struct Smoothed {
    p: f64,
    eps2: f64,
    offset: f64,
}

impl Smoothed {
    fn new(p: f64, eps: f64) -> Self {
        Smoothed {
            p,
            eps2: eps * eps,
            offset: eps.powf(p),
        }
    }

    fn value(&self, t: f64) -> f64 {
        (t * t + self.eps2).powf(0.5 * self.p) - self.offset
    }

    fn slope(&self, t: f64) -> f64 {
        self.p * t * (t * t + self.eps2).powf(0.5 * self.p - 1.0)
    }

    fn curvature(&self, t: f64) -> f64 {
        let s = t * t + self.eps2;
        self.p * s.powf(0.5 * self.p - 2.0) * ((self.p - 1.0) * t * t + self.eps2)
    }
}

/// Smoothed p-Dirichlet energy over the free vertices (all but `a` and `b`).
struct DirichletProblem<'g> {
    g: &'g Graph,
    free: Vec<NodeId>,
    slot: Vec<Option<usize>>,
}

impl<'g> DirichletProblem<'g> {
    fn new(g: &'g Graph, a: NodeId, b: NodeId) -> Self {
        let free: Vec<NodeId> = (0..g.node_count()).filter(|&v| v != a && v != b).collect();
        let mut slot = vec![None; g.node_count()];
        for (k, &v) in free.iter().enumerate() {
            slot[v] = Some(k);
        }
        DirichletProblem { g, free, slot }
    }

    fn objective(&self, phi: &[f64], f: Smoothed) -> f64 {
        self.g
            .edges()
            .iter()
            .map(|&(u, v)| f.value(phi[u] - phi[v]))
            .sum()
    }

    fn gradient_and_hessian(&self, phi: &[f64], f: Smoothed) -> (Vec<f64>, Matrix) {
        let m = self.free.len();
        let mut grad = vec![0.0; m];
        let mut hess = Matrix::zeros(m, m);
        for &(u, v) in self.g.edges() {
            let t = phi[u] - phi[v];
            let d1 = f.slope(t);
            let d2 = f.curvature(t);
            let (su, sv) = (self.slot[u], self.slot[v]);
            if let Some(i) = su {
                grad[i] += d1;
                hess[(i, i)] += d2;
            }
            if let Some(j) = sv {
                grad[j] -= d1;
                hess[(j, j)] += d2;
            }
            if let (Some(i), Some(j)) = (su, sv) {
                hess[(i, j)] -= d2;
                hess[(j, i)] -= d2;
            }
        }
        (grad, hess)
    }

    fn step(&self, phi: &[f64], dir: &[f64], alpha: f64) -> Vec<f64> {
        let mut out = phi.to_vec();
        for (k, &v) in self.free.iter().enumerate() {
            out[v] += alpha * dir[k];
        }
        out
    }

    /// Damped Newton with Armijo backtracking; returns the number of steps taken.
    fn minimize(&self, phi: &mut Vec<f64>, f: Smoothed) -> usize {
        if self.free.is_empty() {
            return 0;
        }
        let mut obj = self.objective(phi, f);
        for step in 0..MAX_NEWTON_STEPS {
            let (grad, mut hess) = self.gradient_and_hessian(phi, f);
            let dir = newton_direction(&mut hess, &grad);
            let slope = dot(&grad, &dir);
            if !(slope < 0.0) || -0.5 * slope <= 1e-15 * obj.abs() {
                return step;
            }
            let mut alpha = 1.0;
            let mut accepted = None;
            for _ in 0..60 {
                let trial = self.step(phi, &dir, alpha);
                let value = self.objective(&trial, f);
                if value <= obj + 1e-4 * alpha * slope {
                    accepted = Some((trial, value));
                    break;
                }
                alpha *= 0.5;
            }
            match accepted {
                Some((trial, value)) => {
                    *phi = trial;
                    obj = value;
                }
                None => return step,
            }
        }
        MAX_NEWTON_STEPS
    }
}

/// Solves `H d = −g`, adding a growing ridge if `H` is numerically singular.
fn newton_direction(hess: &mut Matrix, grad: &[f64]) -> Vec<f64> {
    let m = grad.len();
    let max_diag = (0..m)
        .map(|i| hess[(i, i)])
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let neg: Vec<f64> = grad.iter().map(|g| -g).collect();
    let mut ridge = 0.0;
    loop {
        if let Ok(ch) = Cholesky::new(hess) {
            return ch.solve(&neg);
        }
        let next = if ridge == 0.0 {
            1e-14 * max_diag
        } else {
            ridge * 100.0
        };
        for i in 0..m {
            hess[(i, i)] += next - ridge;
        }
        ridge = next;
        if ridge > max_diag {
            // Steepest descent as a last resort.
            return neg;
        }
    }
}

/// Splits the flux `|f'(φ(u) − φ(v))|`, oriented from lower to higher
/// potential, into `a`–`b` paths by repeatedly taking a widest path.
fn flux_paths(g: &Graph, phi: &[f64], flux: &[f64], a: NodeId, b: NodeId) -> Vec<(Path, f64)> {
    let n = g.node_count();
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&x, &y| phi[x].total_cmp(&phi[y]).then(x.cmp(&y)));
    let mut remaining = flux.to_vec();
    let peak = flux.iter().copied().fold(0.0, f64::max);
    let threshold = 1e-10 * peak;
    let mut out = Vec::new();
    for _ in 0..(2 * g.edge_count() + 2) {
        let mut width = vec![0.0f64; n];
        let mut pred: Vec<Option<(NodeId, usize)>> = vec![None; n];
        width[a] = f64::INFINITY;
        for &u in &order {
            if width[u] == 0.0 {
                continue;
            }
            for &(v, e) in g.neighbors(u) {
                if phi[v] > phi[u] && remaining[e] > 0.0 {
                    let w = width[u].min(remaining[e]);
                    if w > width[v] {
                        width[v] = w;
                        pred[v] = Some((u, e));
                    }
                }
            }
        }
        let w = width[b];
        if !(w > threshold) || w.is_infinite() {
            break;
        }
        let mut vertices = vec![b];
        let mut edges = Vec::new();
        let mut cur = b;
        while let Some((u, e)) = pred[cur] {
            remaining[e] -= w;
            vertices.push(u);
            edges.push(e);
            cur = u;
        }
        vertices.reverse();
        edges.reverse();
        out.push((Path::from_parts(vertices, edges), w));
    }
    out
}

/// Minimizes `Σ |φ(x) − φ(y)|^p` subject to `φ(a) = 0`, `φ(b) = 1`.
///
/// The objective is smoothed with parameter `ε`, minimized by damped Newton
/// from the harmonic potential, and `ε` is shrunk geometrically. After each
/// stage the density `|Δφ|` is rescaled to admissibility for the upper
/// bound, and the flux `|Δφ|^{p−1}` is split into paths whose subfamily
/// modulus, solved in the dual, gives the lower bound.
pub fn modulus_potential(
    g: &Graph,
    a: NodeId,
    b: NodeId,
    p: f64,
    cfg: &SolverConfig,
) -> Result<ModulusResult> {
    check_endpoints(g, a, b)?;
    check_interior(p)?;
    cfg.validate()?;
    let problem = DirichletProblem::new(g, a, b);
    let run = GreedyRun::new(g, a, b, p, cfg);

    let harmonic = ResistanceSolver::new(g)?.unit_current_potential(a, b);
    let span = harmonic[b] - harmonic[a];
    let mut phi: Vec<f64> = harmonic.iter().map(|x| (x - harmonic[a]) / span).collect();

    let inner_tol = cfg.tolerance / (10.0 * p);
    let mut eps = cfg.smoothing_epsilon_initial;
    let mut steps = 0;
    let mut best: Option<Bracket> = None;
    let mut best_phi = phi.clone();
    let mut dual = PathDual::new(p, g.edge_count());
    for _stage in 0..cfg.max_iterations.max(1) {
        let smooth = Smoothed::new(p, eps);
        steps += problem.minimize(&mut phi, smooth);

        let rho: Vec<f64> = g
            .edges()
            .iter()
            .map(|&(u, v)| (phi[u] - phi[v]).abs())
            .collect();
        let (upper, density, _) = run.rescale(&rho)?;
        let flux: Vec<f64> = g
            .edges()
            .iter()
            .map(|&(u, v)| smooth.slope(phi[u] - phi[v]).abs())
            .collect();
        let mut stage_dual = PathDual::new(p, g.edge_count());
        for (path, weight) in flux_paths(g, &phi, &flux, a, b) {
            stage_dual.push(&path, weight);
        }
        stage_dual.solve(inner_tol, 20_000);
        let lower = if stage_dual.len() > 0 {
            stage_dual.dual_value().max(0.0)
        } else {
            0.0
        };

        let improved = best.as_ref().is_none_or(|b| upper < b.upper);
        let mut bracket = best.take().unwrap_or(Bracket {
            lower,
            upper,
            density: density.clone(),
            iterations: 0,
            converged: false,
        });
        if improved {
            bracket.upper = upper;
            bracket.density = density;
            best_phi = phi.clone();
        }
        if lower >= bracket.lower {
            bracket.lower = lower;
            dual = stage_dual;
        }
        let done = bracket.gap() <= cfg.tolerance;
        best = Some(bracket);
        if done || eps * cfg.continuation_factor < MIN_EPSILON {
            break;
        }
        eps *= cfg.continuation_factor;
    }

    let mut bracket = best.expect("at least one stage runs");
    bracket.iterations = steps;
    if bracket.gap() > cfg.tolerance {
        // Certification stalled: add violated paths to the flux family.
        let start = dual.density();
        let refined = run.drive(&mut dual, start, REFINE_ROUNDS)?;
        bracket.lower = bracket.lower.max(refined.lower);
        if refined.upper < bracket.upper {
            bracket.upper = refined.upper;
            bracket.density = refined.density;
        }
    }
    bracket.converged = bracket.gap() <= cfg.tolerance;
    let active = dual.len();
    Ok(bracket.into_result(p, active, SolvedBy::Potential, Some(best_phi)))
}
