//! The `d_p` metrics: distance matrices, triangle audits and antisnowflaking exponents.

mod experiment;
mod triangle;

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{format_real, Exponent};
use crate::graph::{bfs_hops, min_cut, Graph, NodeId, ResistanceSolver};
use crate::modulus::{modulus, Method, SolverConfig};

pub use experiment::{default_p_grid, er_experiment, AsfeEstimate, AsfeRow, ExperimentConfig};
pub use triangle::{
    asfe_graph, flat_exponent, tightest_triple, triangle_audit, ultrametric_violations,
    TriangleReport, Violation, FLAT_BAND,
};

/// `d_p(a, b)`: `Mod_p(Γ(a, b))^{−1/p}`, the hop distance for `p = ∞`, 0 when `a = b`.
pub fn dp_distance(
    g: &Graph,
    a: NodeId,
    b: NodeId,
    p: Exponent,
    cfg: &SolverConfig,
) -> Result<f64> {
    g.check_node(a)?;
    g.check_node(b)?;
    if a == b {
        return Ok(0.0);
    }
    Ok(modulus(g, a, b, p, cfg, Method::Auto)?.distance())
}

/// Symmetric matrix of pairwise distances with node labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    /// Exponent of the `d_p` metric, absent for matrices read from a file.
    pub p: Option<Exponent>,
    /// Power already applied to the entries.
    pub t: f64,
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Checks symmetry, a zero diagonal and positive off-diagonal entries.
    pub fn new(labels: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "distance matrix must be {n}x{n} to match its labels"
            )));
        }
        for i in 0..n {
            if values[i][i] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry for `{}` is {}, expected 0",
                    labels[i], values[i][i]
                )));
            }
            for j in (i + 1)..n {
                let (x, y) = (values[i][j], values[j][i]);
                if x != y {
                    return Err(Error::InvalidArgument(format!(
                        "entries for `{}`,`{}` differ: {x} vs {y}",
                        labels[i], labels[j]
                    )));
                }
                if !(x > 0.0 && x.is_finite()) {
                    return Err(Error::InvalidArgument(format!(
                        "distance between `{}` and `{}` must be positive and finite, got {x}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(DistanceMatrix {
            p: None,
            t: 1.0,
            labels,
            values,
        })
    }

    /// Unlabelled matrix; nodes are named `0..n`.
    pub fn from_rows(values: Vec<Vec<f64>>) -> Result<Self> {
        let labels = (0..values.len()).map(|i| i.to_string()).collect();
        DistanceMatrix::new(labels, values)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a][b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Entries raised to `s`; `t` is multiplied accordingly.
    pub fn powered(&self, s: f64) -> DistanceMatrix {
        DistanceMatrix {
            p: self.p,
            t: self.t * s,
            labels: self.labels.clone(),
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|x| x.powf(s)).collect())
                .collect(),
        }
    }

    /// Largest absolute difference to `other`, which must have the same size.
    pub fn max_abs_diff(&self, other: &DistanceMatrix) -> f64 {
        self.values
            .iter()
            .flatten()
            .zip(other.values.iter().flatten())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with the labels as header row and first column, preceded by `# ` comment lines.
    pub fn write_csv<W: Write>(&self, out: W, comments: &[String]) -> Result<()> {
        let mut out = out;
        for c in comments {
            writeln!(out, "# {c}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header)?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let mut record = vec![label.clone()];
            record.extend(row.iter().map(|&x| format_real(x)));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the format written by [`DistanceMatrix::write_csv`].
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(input);
        let mut records = reader.records();
        let header = records
            .next()
            .ok_or_else(|| Error::InvalidArgument("distance matrix CSV is empty".into()))??;
        let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut values = Vec::with_capacity(labels.len());
        for (i, record) in records.enumerate() {
            let record = record?;
            if record.get(0) != labels.get(i).map(String::as_str) {
                return Err(Error::InvalidArgument(format!(
                    "row {} is labelled `{}`, expected `{}`",
                    i + 1,
                    record.get(0).unwrap_or(""),
                    labels.get(i).map(String::as_str).unwrap_or("")
                )));
            }
            let row = record
                .iter()
                .skip(1)
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad distance `{s}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            values.push(row);
        }
        DistanceMatrix::new(labels, values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p.map(|p| p.to_string()),
            "t": self.t,
            "labels": self.labels,
            "values": self.values,
        })
    }
}

/// All pairwise `d_p`.
///
/// `p = 2` uses one Laplacian factorization, `p = ∞` one BFS per node and
/// `p = 1` one min cut per pair. Other exponents run the potential solver on
/// each pair; pairs are spread over the current rayon pool.
pub fn distance_matrix(g: &Graph, p: Exponent, cfg: &SolverConfig) -> Result<DistanceMatrix> {
    let n = g.node_count();
    let mut values = vec![vec![0.0; n]; n];
    match p {
        Exponent::Infinite => {
            for (a, row) in values.iter_mut().enumerate() {
                for (b, h) in bfs_hops(g, a)?.into_iter().enumerate() {
                    row[b] = h as f64;
                }
            }
        }
        Exponent::Finite(pv) if pv == 2.0 => {
            let r = ResistanceSolver::new(g)?.all_pairs();
            for a in 0..n {
                for b in (a + 1)..n {
                    let d = r[(a, b)].sqrt();
                    values[a][b] = d;
                    values[b][a] = d;
                }
            }
        }
        Exponent::Finite(pv) => {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .collect();
            let distances: Vec<f64> = pairs
                .par_iter()
                .map(|&(a, b)| {
                    if pv == 1.0 {
                        Ok(1.0 / min_cut(g, a, b)?.value as f64)
                    } else {
                        dp_distance(g, a, b, p, cfg)
                    }
                })
                .collect::<Result<_>>()?;
            for (&(a, b), d) in pairs.iter().zip(distances) {
                values[a][b] = d;
                values[b][a] = d;
            }
        }
    }
    let mut m = DistanceMatrix::new(g.labels().to_vec(), values)?;
    m.p = Some(p);
    Ok(m)
}
