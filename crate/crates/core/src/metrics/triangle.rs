use serde::{Deserialize, Serialize};

use super::DistanceMatrix;
use crate::error::{Error, Result};

/// Relative band inside which `d(a,b)^t = d(a,c)^t + d(c,b)^t` counts as flat.
pub const FLAT_BAND: f64 = 1e-9;

/// Default absolute tolerance of [`flat_exponent`].
const FLAT_EXPONENT_TOL: f64 = 1e-10;

/// A triple `(a, b, c)` with `lhs = d(a,b)^t` and `rhs = d(a,c)^t + d(c,b)^t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub t: f64,
    pub triples: usize,
    /// `lhs > rhs` beyond both the flat band and the caller's tolerance.
    pub violations: Vec<Violation>,
    /// `|lhs − rhs| ≤ FLAT_BAND · rhs`.
    pub flat: Vec<Violation>,
    /// Outside the flat band but within the caller's tolerance of equality,
    /// so the verdict depends on solver error.
    pub indeterminate: Vec<Violation>,
}

impl TriangleReport {
    pub fn is_metric(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d(a,b)^t ≤ d(a,c)^t + d(c,b)^t` over every pair `a < b` and every third node `c`.
///
/// `tol` is the relative error of the entries, typically the solver tolerance.
pub fn triangle_audit(m: &DistanceMatrix, t: f64, tol: f64) -> TriangleReport {
    let n = m.len();
    let mut report = TriangleReport {
        t,
        ..TriangleReport::default()
    };
    // Relative errors in the entries are amplified by t after powering.
    let band = (tol * t).max(FLAT_BAND);
    for a in 0..n {
        for b in (a + 1)..n {
            let lhs = m.get(a, b).powf(t);
            for c in (0..n).filter(|&c| c != a && c != b) {
                report.triples += 1;
                let rhs = m.get(a, c).powf(t) + m.get(c, b).powf(t);
                let rel = (lhs - rhs) / rhs;
                let triple = Violation { a, b, c, lhs, rhs };
                if rel.abs() <= FLAT_BAND {
                    report.flat.push(triple);
                } else if rel > band {
                    report.violations.push(triple);
                } else if rel.abs() <= band {
                    report.indeterminate.push(triple);
                }
            }
        }
    }
    report
}

/// Triples with `d(a,b) > max(d(a,c), d(c,b))` beyond relative `tol`.
pub fn ultrametric_violations(m: &DistanceMatrix, tol: f64) -> Vec<Violation> {
    let n = m.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let lhs = m.get(a, b);
            for c in (0..n).filter(|&c| c != a && c != b) {
                let rhs = m.get(a, c).max(m.get(c, b));
                if lhs > rhs * (1.0 + tol) {
                    out.push(Violation { a, b, c, lhs, rhs });
                }
            }
        }
    }
    out
}

/// The `t` with `dab^t = dac^t + dcb^t`, for `dab` opposite the vertex `c`.
///
/// Returns `+∞` when `dab ≤ max(dac, dcb)` (no power flattens the triangle
/// from this side), 1 when it is already flat, and a value below 1 when the
/// ordinary triangle inequality fails. Otherwise the root is bracketed and
/// bisected to absolute tolerance `tol`.
pub fn flat_exponent(dab: f64, dac: f64, dcb: f64, tol: f64) -> Result<f64> {
    for (name, x) in [("dab", dab), ("dac", dac), ("dcb", dcb)] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "{name} must be positive and finite, got {x}"
            )));
        }
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if dab <= dac.max(dcb) {
        return Ok(f64::INFINITY);
    }
    if dab == dac + dcb {
        return Ok(1.0);
    }
    // h(t) = (dac/dab)^t + (dcb/dab)^t − 1 falls strictly from 1 at t = 0 to −1.
    let (lx, ly) = ((dac / dab).ln(), (dcb / dab).ln());
    let h = |t: f64| (t * lx).exp() + (t * ly).exp() - 1.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    while h(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Ok(f64::INFINITY);
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Smallest flattening exponent of a triangle with the given sides, over its three sides.
pub(crate) fn triple_exponent(ab: f64, ac: f64, bc: f64) -> f64 {
    [(ab, ac, bc), (ac, ab, bc), (bc, ab, ac)]
        .into_iter()
        .map(|(x, y, z)| {
            flat_exponent(x, y, z, FLAT_EXPONENT_TOL).expect("metric entries are positive")
        })
        .fold(f64::INFINITY, f64::min)
}

fn triangle_exponent(m: &DistanceMatrix, a: usize, b: usize, c: usize) -> f64 {
    triple_exponent(m.get(a, b), m.get(a, c), m.get(b, c))
}

/// Triple `(a, b, c)`, `a < b < c`, with the smallest flattening exponent, and that exponent.
pub fn tightest_triple(m: &DistanceMatrix) -> Option<((usize, usize, usize), f64)> {
    let n = m.len();
    let mut best: Option<((usize, usize, usize), f64)> = None;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let t = triangle_exponent(m, a, b, c);
                if t.is_finite() && best.is_none_or(|(_, bt)| t < bt) {
                    best = Some(((a, b, c), t));
                }
            }
        }
    }
    best
}

/// `ASFE(d) = sup{t ≥ 1 : d^t is a metric}`, the least flattening exponent
/// over all triples; `+∞` when no triple ever flattens (ultrametrics).
pub fn asfe_graph(m: &DistanceMatrix) -> f64 {
    tightest_triple(m).map_or(f64::INFINITY, |(_, t)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3_d2() -> DistanceMatrix {
        let s = 2f64.sqrt();
        DistanceMatrix::from_rows(vec![
            vec![0.0, 1.0, s],
            vec![1.0, 0.0, 1.0],
            vec![s, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn flat_exponent_examples() {
        let t = flat_exponent(2f64.sqrt(), 1.0, 1.0, 1e-10).unwrap();
        assert!((t - 2.0).abs() < 1e-9);
        assert_eq!(flat_exponent(2.0, 1.0, 1.0, 1e-10).unwrap(), 1.0);
        assert_eq!(flat_exponent(1.0, 1.0, 1.0, 1e-10).unwrap(), f64::INFINITY);
        let side = 0.75f64.sqrt();
        let t = flat_exponent(1.0, side, side, 1e-10).unwrap();
        let t0 = 2.0 / (4.0f64 / 3.0).log2();
        assert!((t - t0).abs() < 1e-9, "{t} vs {t0}");
        assert!((t - 4.8188).abs() < 1e-4);
        assert!(flat_exponent(3.0, 1.0, 1.0, 1e-10).unwrap() < 1.0);
        assert!(flat_exponent(0.0, 1.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn path_audits() {
        let m = p3_d2();
        let r = triangle_audit(&m, 2.0, 1e-9);
        assert!(r.is_metric());
        assert_eq!(r.flat.len(), 1);
        assert_eq!((r.flat[0].a, r.flat[0].b, r.flat[0].c), (0, 2, 1));
        assert_eq!(r.triples, 3);

        let r = triangle_audit(&m, 2.1, 1e-9);
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].a, r.violations[0].b), (0, 2));
        assert!((asfe_graph(&m) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn ultrametric_has_infinite_asfe() {
        let m = DistanceMatrix::from_rows(vec![
            vec![0.0, 0.5, 0.5],
            vec![0.5, 0.0, 0.25],
            vec![0.5, 0.25, 0.0],
        ])
        .unwrap();
        assert!(ultrametric_violations(&m, 0.0).is_empty());
        assert!(triangle_audit(&m, 10.0, 1e-9).is_metric());
        assert_eq!(asfe_graph(&m), f64::INFINITY);
        assert!(tightest_triple(&m).is_none());
    }
}
