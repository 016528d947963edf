//! Corner-to-corner timings on square grids.

use std::io::Write;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::graph::grid_graph;
use crate::modulus::{modulus, Method, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchMethod {
    /// Laplacian solve, `p = 2` only.
    Lap,
    /// Potential solver.
    Opt,
    Greedy,
}

impl std::str::FromStr for BenchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "lap" => Ok(BenchMethod::Lap),
            "opt" => Ok(BenchMethod::Opt),
            "greedy" => Ok(BenchMethod::Greedy),
            other => Err(Error::InvalidArgument(format!(
                "unknown bench method `{other}` (expected lap, opt or greedy)"
            ))),
        }
    }
}

/// One timed series: an exponent and, for `1 < p < ∞`, the solver used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series {
    pub p: Exponent,
    pub method: Option<BenchMethod>,
}

impl Series {
    /// Column header: `1`, `inf`, `2 (lap)`, `2.5 (opt)`, ...
    pub fn header(&self) -> String {
        match self.method {
            None => self.p.to_string(),
            Some(m) => format!(
                "{} ({})",
                self.p,
                match m {
                    BenchMethod::Lap => "lap",
                    BenchMethod::Opt => "opt",
                    BenchMethod::Greedy => "greedy",
                }
            ),
        }
    }
}

/// Expands exponents and methods into series. `p = 1` and `p = ∞` are exact
/// and get a single series; `lap` only applies to `p = 2`.
pub fn series(ps: &[Exponent], methods: &[BenchMethod]) -> Vec<Series> {
    let mut out = Vec::new();
    for &p in ps {
        match p.interior() {
            None => out.push(Series { p, method: None }),
            Some(pv) => {
                let mut any = false;
                for &m in methods {
                    if m == BenchMethod::Lap && pv != 2.0 {
                        continue;
                    }
                    out.push(Series { p, method: Some(m) });
                    any = true;
                }
                if !any {
                    out.push(Series {
                        p,
                        method: Some(BenchMethod::Opt),
                    });
                }
            }
        }
    }
    out
}

pub struct BenchRow {
    pub n: usize,
    /// Mean seconds per solve, one per series.
    pub seconds: Vec<f64>,
    /// Distance from the last repetition, one per series.
    pub distances: Vec<f64>,
}

/// Times `d_p` between opposite corners of each `n × n` grid, averaged over `reps`.
pub fn run(
    sizes: &[usize],
    series: &[Series],
    reps: usize,
    cfg: &SolverConfig,
) -> Result<Vec<BenchRow>> {
    if reps == 0 {
        return Err(Error::InvalidArgument(
            "need at least one repetition".into(),
        ));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let g = grid_graph(n, n)?;
        let (a, b) = (0, n * n - 1);
        let mut seconds = Vec::with_capacity(series.len());
        let mut distances = Vec::with_capacity(series.len());
        for s in series {
            let method = match s.method {
                None | Some(BenchMethod::Lap) => Method::Auto,
                Some(BenchMethod::Opt) => Method::Potential,
                Some(BenchMethod::Greedy) => Method::Greedy,
            };
            let mut distance = 0.0;
            let start = Instant::now();
            for _ in 0..reps {
                distance = if a == b {
                    0.0
                } else {
                    modulus(&g, a, b, s.p, cfg, method)?.distance()
                };
            }
            seconds.push(start.elapsed().as_secs_f64() / reps as f64);
            distances.push(distance);
        }
        rows.push(BenchRow {
            n,
            seconds,
            distances,
        });
    }
    Ok(rows)
}

/// Wide CSV: `n` then one timing column per series, then one distance column per series.
pub fn write_csv<W: Write>(
    out: W,
    comment: &str,
    series: &[Series],
    rows: &[BenchRow],
) -> Result<()> {
    let mut out = out;
    writeln!(out, "# {comment}")?;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    header.extend(series.iter().map(|s| s.header()));
    header.extend(series.iter().map(|s| format!("d: {}", s.header())));
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.n.to_string()];
        record.extend(row.seconds.iter().map(|t| format!("{t:.6e}")));
        record.extend(row.distances.iter().map(|d| format!("{d}")));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
