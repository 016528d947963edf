//! p-modulus of connecting families `Γ(a, b)`.
//!
//! [`modulus`] dispatches to an exact classical algorithm when one exists
//! (`p = 1`: min cut, `p = 2`: effective conductance, `p = ∞`: reciprocal hop
//! distance) and otherwise to one of two iterative solvers, both of which
//! report a certified bracket `lower_bound ≤ Mod_p ≤ upper_bound`:
//!
//! * [`modulus_potential`] minimizes the p-Dirichlet energy over vertex potentials;
//! * [`modulus_greedy`] grows a path subfamily by adding the most violated constraint.

mod beurling;
mod dual;
pub mod energy;
mod greedy;
mod potential;
mod shortest;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::graph::{min_cut, shortest_path_hops, Density, Graph, NodeId, ResistanceSolver};

pub use beurling::{beurling_verify, BeurlingCertificate};
pub use energy::p_energy;
pub use greedy::modulus_greedy;
pub use potential::modulus_potential;
pub use shortest::rho_shortest_path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Target relative width of the certified bracket.
    pub tolerance: f64,
    /// Outer iteration budget (greedy additions, continuation stages).
    pub max_iterations: usize,
    pub smoothing_epsilon_initial: f64,
    /// Factor applied to the smoothing parameter between stages, in `(0, 1)`.
    pub continuation_factor: f64,
    /// Greedy stopping slack: stop once `ℓ_ρ(Γ) ≥ 1 − greedy_eps_tol`.
    pub greedy_eps_tol: f64,
    pub max_active_paths: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tolerance: 1e-6,
            max_iterations: 2000,
            smoothing_epsilon_initial: 1e-2,
            continuation_factor: 0.1,
            greedy_eps_tol: 1e-6,
            max_active_paths: 50_000,
        }
    }
}

impl SolverConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SolverConfig {
            tolerance,
            greedy_eps_tol: tolerance,
            ..SolverConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !(self.continuation_factor > 0.0 && self.continuation_factor < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "continuation factor must lie in (0, 1), got {}",
                self.continuation_factor
            )));
        }
        if !(self.greedy_eps_tol > 0.0 && self.greedy_eps_tol < 1.0) {
            return Err(Error::InvalidArgument(
                "greedy_eps_tol must lie in (0, 1)".into(),
            ));
        }
        if !(self.smoothing_epsilon_initial > 0.0) {
            return Err(Error::InvalidArgument(
                "smoothing epsilon must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Requested solver for [`modulus`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Auto,
    Potential,
    Greedy,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "potential" | "opt" => Ok(Method::Potential),
            "greedy" => Ok(Method::Greedy),
            other => Err(Error::InvalidArgument(format!("unknown method `{other}`"))),
        }
    }
}

/// Algorithm that actually produced a [`ModulusResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvedBy {
    /// `a = b`: the family contains the constant walk.
    Identical,
    ShortestPath,
    MinCut,
    Laplacian,
    Potential,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModulusResult {
    pub p: Exponent,
    /// Energy of the returned admissible density (`+∞` when `a = b`).
    #[serde(with = "crate::exponent::inf_real")]
    pub value: f64,
    #[serde(with = "crate::exponent::inf_real")]
    pub lower_bound: f64,
    #[serde(with = "crate::exponent::inf_real")]
    pub upper_bound: f64,
    /// Admissible density achieving `value`.
    pub density: Density,
    /// Vertex potential with `φ(a) = 0`, `φ(b) = 1`, when the method produces one.
    pub potential: Option<Vec<f64>>,
    pub iterations: usize,
    pub active_paths: usize,
    pub converged: bool,
    pub solved_by: SolvedBy,
}

impl ModulusResult {
    /// Relative width of the certified bracket.
    pub fn relative_gap(&self) -> f64 {
        relative_gap(self.lower_bound, self.upper_bound)
    }

    /// `d_p = Mod_p^{−1/p}`, or `1/Mod_∞` for `p = ∞`; zero when `a = b`.
    pub fn distance(&self) -> f64 {
        if self.solved_by == SolvedBy::Identical {
            return 0.0;
        }
        match self.p {
            Exponent::Finite(p) if p == 1.0 => 1.0 / self.value,
            Exponent::Finite(p) if p == 2.0 => 1.0 / self.value.sqrt(),
            Exponent::Finite(p) => self.value.powf(-1.0 / p),
            Exponent::Infinite => 1.0 / self.value,
        }
    }

    fn exact(p: Exponent, value: f64, density: Vec<f64>, solved_by: SolvedBy) -> Self {
        ModulusResult {
            p,
            value,
            lower_bound: value,
            upper_bound: value,
            density: Density::new(density).expect("exact densities are nonnegative"),
            potential: None,
            iterations: 0,
            active_paths: 0,
            converged: true,
            solved_by,
        }
    }
}

pub(crate) fn relative_gap(lower: f64, upper: f64) -> f64 {
    if upper == lower {
        return 0.0;
    }
    (upper - lower) / lower.max(f64::MIN_POSITIVE)
}

pub(crate) fn check_endpoints(g: &Graph, a: NodeId, b: NodeId) -> Result<()> {
    g.check_node(a)?;
    g.check_node(b)?;
    if a == b {
        return Err(Error::SameEndpoints);
    }
    Ok(())
}

pub(crate) fn check_interior(p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "iterative solvers need 1 < p < inf, got {p}"
        )))
    }
}

/// `Mod_p(Γ(a, b))` for any `p ∈ [1, ∞]`.
///
/// `p = 1` and `p = ∞` are always solved exactly. `p = 2` uses the
/// Laplacian under [`Method::Auto`]; an explicit method forces the
/// iterative solver.
pub fn modulus(
    g: &Graph,
    a: NodeId,
    b: NodeId,
    p: Exponent,
    cfg: &SolverConfig,
    method: Method,
) -> Result<ModulusResult> {
    g.check_node(a)?;
    g.check_node(b)?;
    cfg.validate()?;
    if a == b {
        return Ok(ModulusResult::exact(
            p,
            f64::INFINITY,
            vec![0.0; g.edge_count()],
            SolvedBy::Identical,
        ));
    }
    match p {
        Exponent::Infinite => {
            let hops = shortest_path_hops(g, a, b)? as f64;
            Ok(ModulusResult::exact(
                p,
                1.0 / hops,
                vec![1.0 / hops; g.edge_count()],
                SolvedBy::ShortestPath,
            ))
        }
        Exponent::Finite(pv) if pv == 1.0 => {
            let cut = min_cut(g, a, b)?;
            let mut rho = vec![0.0; g.edge_count()];
            for e in cut.boundary(g) {
                rho[e] = 1.0;
            }
            Ok(ModulusResult::exact(
                p,
                cut.value as f64,
                rho,
                SolvedBy::MinCut,
            ))
        }
        Exponent::Finite(pv) if pv == 2.0 && method == Method::Auto => laplacian_modulus(g, a, b),
        Exponent::Finite(pv) => match method {
            Method::Greedy => modulus_greedy(g, a, b, pv, cfg),
            Method::Potential | Method::Auto => modulus_potential(g, a, b, pv, cfg),
        },
    }
}

fn laplacian_modulus(g: &Graph, a: NodeId, b: NodeId) -> Result<ModulusResult> {
    let solver = ResistanceSolver::new(g)?;
    let x = solver.unit_current_potential(a, b);
    let resistance = x[b] - x[a];
    let phi: Vec<f64> = x.iter().map(|v| (v - x[a]) / resistance).collect();
    let rho: Vec<f64> = g
        .edges()
        .iter()
        .map(|&(u, v)| (phi[u] - phi[v]).abs())
        .collect();
    let mut result =
        ModulusResult::exact(Exponent::TWO, 1.0 / resistance, rho, SolvedBy::Laplacian);
    result.potential = Some(phi);
    Ok(result)
}
