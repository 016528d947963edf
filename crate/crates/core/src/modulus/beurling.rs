use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Density, Graph, Path};
use crate::linalg::{nnls, norm2, Matrix};

/// Outcome of a Beurling extremality check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeurlingCertificate {
    pub extremal: bool,
    /// Every path in the subfamily has `ℓ_ρ(path) = 1` within tolerance.
    pub lengths_ok: bool,
    /// `ρ^{p−1}` lies in the cone spanned by the usage rows within tolerance.
    pub cone_ok: bool,
    /// `ℓ_ρ(path) − 1` per path.
    pub length_defects: Vec<f64>,
    /// Nonnegative multipliers `λ` with `Nᵀλ ≈ ρ^{p−1}`.
    pub multipliers: Vec<f64>,
    /// `‖Nᵀλ − ρ^{p−1}‖₂ / max(1, ‖ρ^{p−1}‖₂)`.
    pub residual: f64,
}

/// Checks Beurling's sufficient condition for `rho` to be extremal for
/// `Mod_p` of a family containing `family`.
///
/// The implication `Nh ≥ 0 ⇒ Σ h ρ^{p−1} ≥ 0` holds exactly when
/// `ρ^{p−1} = Nᵀλ` for some `λ ≥ 0` (Farkas), which is decided by a
/// nonnegative least-squares fit.
pub fn beurling_verify(
    g: &Graph,
    family: &[Path],
    rho: &Density,
    p: f64,
    tol: f64,
) -> Result<BeurlingCertificate> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "Beurling check needs 1 < p < inf, got {p}"
        )));
    }
    if rho.len() != g.edge_count() {
        return Err(Error::DensityLength {
            expected: g.edge_count(),
            got: rho.len(),
        });
    }
    let (s, t) = (first.start(), first.end());
    if let Some(bad) = family
        .iter()
        .find(|path| (path.start(), path.end()) != (s, t))
    {
        return Err(Error::InvalidArgument(format!(
            "path {:?} does not connect `{}` to `{}`",
            bad.labels(g),
            g.label(s),
            g.label(t)
        )));
    }

    let values = rho.values();
    let length_defects: Vec<f64> = family
        .iter()
        .map(|path| path.length(values) - 1.0)
        .collect();
    let lengths_ok = length_defects.iter().all(|d| d.abs() <= tol);

    let target: Vec<f64> = values.iter().map(|r| r.powf(p - 1.0)).collect();
    let mut usage_t = Matrix::zeros(g.edge_count(), family.len());
    for (k, path) in family.iter().enumerate() {
        for &e in path.edges() {
            usage_t[(e, k)] += 1.0;
        }
    }
    let fit = nnls(&usage_t, &target);
    let residual = fit.residual_norm / norm2(&target).max(1.0);
    let cone_ok = residual <= tol;
    Ok(BeurlingCertificate {
        extremal: lengths_ok && cone_ok,
        lengths_ok,
        cone_ok,
        length_defects,
        multipliers: fit.x,
        residual,
    })
}
