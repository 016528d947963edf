//! Isometric embeddability of finite metrics into Euclidean space.
//!
//! For points `x_0, …, x_m` the Schoenberg matrix has entries
//! `M_ij = d(x_i,x_0)² + d(x_0,x_j)² − d(x_i,x_j)²`, `i, j ≥ 1`. The metric
//! embeds isometrically in `Rⁿ` iff `M` is positive semidefinite of rank at
//! most `n`. `M/2` is then the Gram matrix of the points with `x_0` at the
//! origin, which gives coordinates.

use std::f64::consts::{PI, SQRT_2};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{format_real, Exponent};
use crate::linalg::Matrix;
use crate::metrics::DistanceMatrix;

/// Relative tolerance for eigenvalue signs and rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Factor around the rank threshold inside which an eigenvalue is ambiguous.
const RANK_BAND: f64 = 100.0;

const MAX_JACOBI_SWEEPS: usize = 100;

/// Schoenberg matrix of `m` with respect to `base`; rows and columns follow
/// the remaining nodes in index order.
pub fn schoenberg_matrix(m: &DistanceMatrix, base: usize) -> Result<Matrix> {
    check_base(m, base)?;
    let others = others(m, base);
    let k = others.len();
    let mut out = Matrix::zeros(k, k);
    for (i, &x) in others.iter().enumerate() {
        for (j, &y) in others.iter().enumerate() {
            let v = m.get(x, base).powi(2) + m.get(base, y).powi(2) - m.get(x, y).powi(2);
            out[(i, j)] = v;
        }
    }
    Ok(out)
}

/// Eigenvalues in descending order with orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

/// Cyclic Jacobi eigendecomposition.
///
/// Rejects matrices whose largest asymmetry exceeds `tol · max(1, ‖M‖_F)`;
/// rotates until the off-diagonal Frobenius norm is at most `tol · ‖M‖_F`
/// or nothing changes in a sweep.
pub fn symmetric_eigen(m: &Matrix, tol: f64) -> Result<SymmetricEigen> {
    if !m.is_square() {
        return Err(Error::InvalidArgument(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let scale = m.norm();
    let asym = m.max_asymmetry();
    if asym > tol * scale.max(1.0) {
        return Err(Error::Asymmetric(asym));
    }
    let mut a = m.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let mut v = Matrix::identity(n);
    let off = |a: &Matrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    for _ in 0..MAX_JACOBI_SWEEPS {
        if off(&a) <= tol * scale {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                if s == 0.0 {
                    continue;
                }
                rotated = true;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, col)] = v[(k, i)];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub base: usize,
    pub labels: Vec<String>,
    /// Target dimension `n`.
    pub dimension: usize,
    pub schoenberg: Vec<Vec<f64>>,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue is at least `−tol · λ_max`.
    pub psd: bool,
    /// Eigenvalues above `tol · λ_max`.
    pub rank: usize,
    /// Rank bounds when eigenvalues within a factor of 100 of the threshold
    /// are counted as zero or as nonzero.
    pub rank_interval: (usize, usize),
    /// `psd && rank <= dimension`.
    pub embeddable: bool,
    /// One point per node in `R^rank`, the base at the origin; present when `psd`.
    pub coordinates: Option<Vec<Vec<f64>>>,
    /// Largest relative error between coordinate distances and the input.
    pub roundtrip_error: Option<f64>,
}

impl EmbeddingReport {
    /// CSV of the coordinates, one row per node.
    pub fn write_coordinates_csv<W: Write>(&self, out: W, comments: &[String]) -> Result<()> {
        let mut out = out;
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["node".to_string()];
        header.extend((1..=self.rank).map(|k| format!("x{k}")));
        w.write_record(&header)?;
        if let Some(points) = &self.coordinates {
            for (label, point) in self.labels.iter().zip(points) {
                let mut record = vec![label.clone()];
                record.extend(point.iter().map(|&x| format_real(x)));
                w.write_record(&record)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Decides whether `m` embeds isometrically into `R^dimension`.
pub fn embeddability(
    m: &DistanceMatrix,
    dimension: usize,
    base: usize,
    tol: f64,
) -> Result<EmbeddingReport> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    let schoenberg = schoenberg_matrix(m, base)?;
    let eigen = symmetric_eigen(&schoenberg, 1e-14)?;
    let values = eigen.values.clone();
    let top = values.first().copied().unwrap_or(0.0).max(0.0);
    let threshold = tol * top;
    let psd = values.last().is_none_or(|&v| v >= -threshold);
    let rank = values.iter().filter(|&&v| v > threshold).count();
    let rank_interval = (
        values
            .iter()
            .filter(|&&v| v > RANK_BAND * threshold)
            .count(),
        values
            .iter()
            .filter(|&&v| v > threshold / RANK_BAND)
            .count(),
    );

    let (coordinates, roundtrip_error) = if psd {
        let points = coordinates(m, base, &eigen, rank);
        let err = roundtrip(m, &points);
        (Some(points), Some(err))
    } else {
        (None, None)
    };
    Ok(EmbeddingReport {
        base,
        labels: m.labels().to_vec(),
        dimension,
        schoenberg: schoenberg.to_rows(),
        eigenvalues: values,
        psd,
        rank,
        rank_interval,
        embeddable: psd && rank <= dimension,
        coordinates,
        roundtrip_error,
    })
}

fn check_base(m: &DistanceMatrix, base: usize) -> Result<()> {
    if base >= m.len() {
        return Err(Error::InvalidNode {
            index: base,
            node_count: m.len(),
        });
    }
    Ok(())
}

fn others(m: &DistanceMatrix, base: usize) -> Vec<usize> {
    (0..m.len()).filter(|&i| i != base).collect()
}

/// `X = V_r diag(√(λ_r/2))` for the leading `rank` eigenpairs of `M`.
fn coordinates(
    m: &DistanceMatrix,
    base: usize,
    eigen: &SymmetricEigen,
    rank: usize,
) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; rank]; m.len()];
    for (row, &node) in others(m, base).iter().enumerate() {
        for k in 0..rank {
            let scale = (0.5 * eigen.values[k]).max(0.0).sqrt();
            points[node][k] = eigen.vectors[(row, k)] * scale;
        }
    }
    points
}

fn roundtrip(m: &DistanceMatrix, points: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..m.len() {
        for b in (a + 1)..m.len() {
            let d: f64 = points[a]
                .iter()
                .zip(&points[b])
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            worst = worst.max((d - m.get(a, b)).abs() / m.get(a, b));
        }
    }
    worst
}

/// The square `a b c d` with unit sides and diagonals `a c`, `b d` of length `beta`.
pub fn square_metric(beta: f64) -> Result<DistanceMatrix> {
    if !(beta > 0.0 && beta <= 2.0) {
        return Err(Error::InvalidArgument(format!(
            "diagonal must lie in (0, 2] for a metric with unit sides, got {beta}"
        )));
    }
    let labels = ["a", "b", "c", "d"].map(String::from).to_vec();
    DistanceMatrix::new(
        labels,
        vec![
            vec![0.0, 1.0, beta, 1.0],
            vec![1.0, 0.0, 1.0, beta],
            vec![beta, 1.0, 0.0, 1.0],
            vec![1.0, beta, 1.0, 0.0],
        ],
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenCurve {
    /// `(β, [λ_1, λ_2, λ_3])` with eigenvalues descending.
    pub rows: Vec<(f64, [f64; 3])>,
    /// Consecutive grid points where `λ_min` goes from `≥ 0` to `< 0`, within
    /// a relative band of [`DEFAULT_RANK_TOL`].
    pub crossing: Option<(f64, f64)>,
}

impl EigenCurve {
    pub fn write_csv<W: Write>(&self, out: W, comments: &[String]) -> Result<()> {
        let mut out = out;
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["beta", "lambda1", "lambda2", "lambda3"])?;
        for (beta, l) in &self.rows {
            w.write_record([beta, &l[0], &l[1], &l[2]].map(|x| format_real(*x)))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Eigenvalues of the square's Schoenberg matrix (base `a`) along a grid of diagonals.
pub fn square_eigencurve(betas: &[f64]) -> Result<EigenCurve> {
    let mut rows = Vec::with_capacity(betas.len());
    for &beta in betas {
        let m = schoenberg_matrix(&square_metric(beta)?, 0)?;
        let v = symmetric_eigen(&m, 1e-14)?.values;
        rows.push((beta, [v[0], v[1], v[2]]));
    }
    let nonnegative = |l: &[f64; 3]| l[2] >= -DEFAULT_RANK_TOL * l[0];
    let crossing = rows
        .windows(2)
        .find(|w| nonnegative(&w[0].1) && !nonnegative(&w[1].1))
        .map(|w| (w[0].0, w[1].0));
    Ok(EigenCurve { rows, crossing })
}

/// Folding the unit square by `θ` along a diagonal: height `h = cos(θ/2)`
/// and the other diagonal `β = √(1 + cos θ)`.
pub fn square_twist(theta: f64) -> Result<(f64, f64)> {
    if !(0.0..PI).contains(&theta) {
        return Err(Error::InvalidArgument(format!(
            "angle must lie in [0, π), got {theta}"
        )));
    }
    Ok(((theta / 2.0).cos(), (1.0 + theta.cos()).sqrt()))
}

/// Diagonal-to-side ratio of `d_p` on the 4-cycle:
/// `f(p) = 2^{1−2/p} (1 + 3^{1−p})^{1/p}`.
pub fn square_ratio(p: Exponent) -> f64 {
    match p {
        Exponent::Finite(p) => 2f64.powf(1.0 - 2.0 / p) * (1.0 + 3f64.powf(1.0 - p)).powf(1.0 / p),
        Exponent::Infinite => 2.0,
    }
}

/// The `p_0` in `(1, 16)` with `f(p_0) = √2`, by bisection to absolute `tol`.
///
/// `d_p` on the 4-cycle embeds in `R³` for `p ≤ p_0` and in no `Rⁿ` beyond.
pub fn square_p_threshold(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let f = |p: f64| square_ratio(Exponent::Finite(p));
    let (mut lo, mut hi) = (1.0, 16.0);
    let samples: Vec<f64> = (0..=150)
        .map(|i| f(lo + (hi - lo) * i as f64 / 150.0))
        .collect();
    if samples.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "f is not increasing on (1, 16)".into(),
        ));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if f(mid) < SQRT_2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
