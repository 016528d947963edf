//! Antisnowflaking exponents of `d_p` on seeded Erdős–Rényi graphs.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dp_distance;
use super::triangle::triple_exponent;
use crate::error::{Error, Result};
use crate::exponent::{format_real, Exponent};
use crate::graph::{derive_seeds, erdos_renyi_connected};
use crate::modulus::SolverConfig;

/// The nodes whose triangle is measured in every graph: the first three indices.
pub const TRIPLE: [usize; 3] = [0, 1, 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub graphs: usize,
    pub nodes: usize,
    pub expected_degree: f64,
    pub p_grid: Vec<Exponent>,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            graphs: 50,
            nodes: 10,
            expected_degree: 6.0,
            p_grid: default_p_grid(),
            seed: 0,
        }
    }
}

/// 15 evenly spaced exponents from 1.2 to 5.
pub fn default_p_grid() -> Vec<Exponent> {
    let (lo, hi, n) = (1.2, 5.0, 15);
    (0..n)
        .map(|i| Exponent::Finite(lo + (hi - lo) * i as f64 / (n - 1) as f64))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsfeRow {
    pub p: Exponent,
    /// `t(p) = min_i t_{p,i}`.
    #[serde(with = "crate::exponent::inf_real")]
    pub t_of_p: f64,
    /// Conjectured value `q(p) = p/(p−1)`.
    #[serde(with = "crate::exponent::inf_real")]
    pub q_of_p: f64,
    /// Seed of the first graph attaining `t(p)`; absent when every `t_{p,i}` is infinite.
    pub argmin_graph_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsfeEstimate {
    pub config: ExperimentConfig,
    pub triple: [usize; 3],
    pub tolerance: f64,
    pub graph_seeds: Vec<u64>,
    pub rows: Vec<AsfeRow>,
    /// `detail[k][i]` is `t_{p,i}` for the `k`-th exponent and `i`-th graph.
    #[serde(with = "crate::exponent::inf_real_table")]
    pub detail: Vec<Vec<f64>>,
}

impl AsfeEstimate {
    /// `min_p (t(p) − q(p))` over exponents with finite `q(p)`; nonnegative
    /// when no counterexample to `t(p) ≥ p/(p−1)` was found.
    pub fn margin(&self) -> f64 {
        self.rows
            .iter()
            .filter(|r| r.q_of_p.is_finite())
            .map(|r| r.t_of_p - r.q_of_p)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut out = out;
        let c = &self.config;
        writeln!(
            out,
            "# pmod {} experiment graphs={} nodes={} degree={} seed={} tolerance={} triple={},{},{}",
            env!("CARGO_PKG_VERSION"),
            c.graphs,
            c.nodes,
            format_real(c.expected_degree),
            c.seed,
            format_real(self.tolerance),
            self.triple[0],
            self.triple[1],
            self.triple[2],
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["p", "t_of_p", "q_of_p", "argmin_graph_seed"])?;
        for r in &self.rows {
            w.write_record([
                r.p.to_string(),
                format_real(r.t_of_p),
                format_real(r.q_of_p),
                r.argmin_graph_seed
                    .map(|s| s.to_string())
                    .unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// For each graph `G_i` and exponent `p`, the least `t_{p,i}` at which the
/// triangle on [`TRIPLE`] becomes flat under `d_p^t`; then `t(p) = min_i t_{p,i}`.
///
/// Graph `i` is drawn with the `i`-th seed of [`derive_seeds`]`(seed, graphs)`.
/// Graphs are processed on the current rayon pool.
pub fn er_experiment(cfg: &ExperimentConfig, solver: &SolverConfig) -> Result<AsfeEstimate> {
    if cfg.graphs == 0 {
        return Err(Error::InvalidArgument("need at least one graph".into()));
    }
    if cfg.nodes < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 nodes for a triangle, got {}",
            cfg.nodes
        )));
    }
    if cfg.p_grid.is_empty() {
        return Err(Error::InvalidArgument("p grid is empty".into()));
    }
    solver.validate()?;
    let seeds = derive_seeds(cfg.seed, cfg.graphs);
    let [x, y, z] = TRIPLE;
    let per_graph: Vec<Vec<f64>> = seeds
        .par_iter()
        .map(|&seed| {
            let g = erdos_renyi_connected(cfg.nodes, cfg.expected_degree, seed)?;
            cfg.p_grid
                .iter()
                .map(|&p| {
                    let xy = dp_distance(&g, x, y, p, solver)?;
                    let xz = dp_distance(&g, x, z, p, solver)?;
                    let yz = dp_distance(&g, y, z, p, solver)?;
                    Ok(triple_exponent(xy, xz, yz))
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let detail: Vec<Vec<f64>> = (0..cfg.p_grid.len())
        .map(|k| per_graph.iter().map(|row| row[k]).collect())
        .collect();
    let rows = cfg
        .p_grid
        .iter()
        .zip(&detail)
        .map(|(&p, ts)| {
            let mut best: Option<usize> = None;
            for (i, &t) in ts.iter().enumerate() {
                if t.is_finite() && best.is_none_or(|b| t < ts[b]) {
                    best = Some(i);
                }
            }
            AsfeRow {
                p,
                t_of_p: best.map_or(f64::INFINITY, |i| ts[i]),
                q_of_p: p.conjugate(),
                argmin_graph_seed: best.map(|i| seeds[i]),
            }
        })
        .collect();
    Ok(AsfeEstimate {
        config: cfg.clone(),
        triple: TRIPLE,
        tolerance: solver.tolerance,
        graph_seeds: seeds,
        rows,
        detail,
    })
}
