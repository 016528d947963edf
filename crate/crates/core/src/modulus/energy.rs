use crate::exponent::Exponent;
use crate::graph::Density;

/// Above this exponent `Σ ρ^p` is evaluated relative to `max ρ` so that
/// small entries do not underflow before the sum is formed.
pub(crate) const LOG_DOMAIN_THRESHOLD: f64 = 16.0;

/// `E_p(ρ) = Σ ρ(e)^p`, or `max ρ(e)` when `p = ∞`.
pub fn p_energy(rho: &Density, p: Exponent) -> f64 {
    match p {
        Exponent::Finite(p) => energy(rho.values(), p),
        Exponent::Infinite => rho.max(),
    }
}

pub(crate) fn energy(rho: &[f64], p: f64) -> f64 {
    scaled_energy(rho, p, 1.0)
}

/// `E_p(ρ / scale)` without forming `ρ / scale` or `scale^p` separately.
pub(crate) fn scaled_energy(rho: &[f64], p: f64, scale: f64) -> f64 {
    if scale <= 0.0 {
        return f64::INFINITY;
    }
    if p <= LOG_DOMAIN_THRESHOLD {
        return rho.iter().map(|r| r.powf(p)).sum::<f64>() / scale.powf(p);
    }
    let m = rho.iter().copied().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    let rel: f64 = rho.iter().map(|r| (r / m).powf(p)).sum();
    (p * (m / scale).ln() + rel.ln()).exp()
}
