use super::dual::PathDual;
use super::energy::scaled_energy;
use super::shortest::shortest_path_by_cost;
use super::{check_endpoints, check_interior, relative_gap, ModulusResult, SolvedBy, SolverConfig};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::graph::{Density, Graph, NodeId};

const INNER_SWEEPS: usize = 200_000;
const MIN_INNER_TOL: f64 = 1e-15;

/// Constraint generation over the simple `a`–`b` paths.
///
/// Each round solves the modulus of the active subfamily `Γ'` in the dual,
/// then adds the `ρ'`-shortest path. The dual value of `Γ'` is a lower bound
/// for `Mod_p(Γ)` by monotonicity in the family, and `ρ'/ℓ_{ρ'}(Γ)` is an
/// admissible density whose energy is an upper bound. Stops once
/// `ℓ_{ρ'}(Γ) ≥ 1 − ε_tol` and the bracket is within `cfg.tolerance`.
pub fn modulus_greedy(
    g: &Graph,
    a: NodeId,
    b: NodeId,
    p: f64,
    cfg: &SolverConfig,
) -> Result<ModulusResult> {
    check_endpoints(g, a, b)?;
    check_interior(p)?;
    cfg.validate()?;
    let mut dual = PathDual::new(p, g.edge_count());
    let run = GreedyRun::new(g, a, b, p, cfg);
    let outcome = run.drive(&mut dual, vec![0.0; g.edge_count()], cfg.max_iterations)?;
    Ok(outcome.into_result(p, dual.len(), SolvedBy::Greedy, None))
}

pub(crate) struct GreedyRun<'a> {
    g: &'a Graph,
    a: NodeId,
    b: NodeId,
    p: f64,
    cfg: &'a SolverConfig,
}

#[derive(Clone, Debug)]
pub(crate) struct Bracket {
    pub lower: f64,
    pub upper: f64,
    /// Admissible density achieving `upper`.
    pub density: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl Bracket {
    pub fn gap(&self) -> f64 {
        relative_gap(self.lower, self.upper)
    }

    pub fn into_result(
        self,
        p: f64,
        active_paths: usize,
        solved_by: SolvedBy,
        potential: Option<Vec<f64>>,
    ) -> ModulusResult {
        // Both bounds are certified; agreement is only up to rounding.
        let lower = self.lower.min(self.upper);
        ModulusResult {
            p: Exponent::Finite(p),
            value: self.upper,
            lower_bound: lower,
            upper_bound: self.upper,
            density: Density::new(self.density).expect("rescaled density is nonnegative"),
            potential,
            iterations: self.iterations,
            active_paths,
            converged: self.converged,
            solved_by,
        }
    }
}

impl<'a> GreedyRun<'a> {
    pub fn new(g: &'a Graph, a: NodeId, b: NodeId, p: f64, cfg: &'a SolverConfig) -> Self {
        GreedyRun { g, a, b, p, cfg }
    }

    /// Upper bound from an arbitrary density: energy of `ρ / ℓ_ρ(Γ)`.
    pub fn rescale(&self, rho: &[f64]) -> Result<(f64, Vec<f64>, f64)> {
        let (_, len) = shortest_path_by_cost(self.g, rho, self.a, self.b)?;
        if len <= 0.0 {
            return Ok((f64::INFINITY, rho.to_vec(), len));
        }
        let upper = scaled_energy(rho, self.p, len);
        Ok((upper, rho.iter().map(|r| r / len).collect(), len))
    }

    /// Runs up to `budget` rounds of constraint generation starting from `rho`,
    /// which should be the stationary density of `dual` (or zero when empty).
    pub fn drive(&self, dual: &mut PathDual, mut rho: Vec<f64>, budget: usize) -> Result<Bracket> {
        let mut inner_tol = (self.cfg.tolerance / (10.0 * self.p)).min(self.cfg.greedy_eps_tol);
        let mut best = Bracket {
            lower: if dual.len() > 0 {
                dual.dual_value().max(0.0)
            } else {
                0.0
            },
            upper: f64::INFINITY,
            density: rho.clone(),
            iterations: 0,
            converged: false,
        };
        for iteration in 0..=budget {
            best.iterations = iteration;
            let (path, len) = shortest_path_by_cost(self.g, &rho, self.a, self.b)?;
            if len > 0.0 {
                let upper = scaled_energy(&rho, self.p, len);
                if upper < best.upper {
                    best.upper = upper;
                    best.density = rho.iter().map(|r| r / len).collect();
                }
            }
            if dual.len() > 0 {
                best.lower = best.lower.max(dual.dual_value());
            }
            if len >= 1.0 - self.cfg.greedy_eps_tol && best.gap() <= self.cfg.tolerance {
                best.converged = true;
                break;
            }
            if iteration == budget {
                break;
            }
            if !dual.push(&path, 0.0) {
                // The most violated path is already active: the inner solve is too loose.
                if inner_tol <= MIN_INNER_TOL {
                    break;
                }
                inner_tol = (inner_tol * 0.01).max(MIN_INNER_TOL);
            } else if dual.len() > self.cfg.max_active_paths {
                return Err(Error::ActiveSetCapExceeded {
                    cap: self.cfg.max_active_paths,
                });
            }
            dual.solve(inner_tol, INNER_SWEEPS);
            rho = dual.density();
        }
        Ok(best)
    }
}
