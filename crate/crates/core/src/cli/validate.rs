//! Closed-form modulus values checked against the solvers.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::exponent::Exponent;
use crate::graph::{complete_graph, cycle_graph, parallel_paths, path_graph, Graph};
use crate::modulus::{modulus, Method, SolverConfig};

pub const GROUPS: [&str; 4] = ["parallel", "cycle", "complete", "path"];

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub group: &'static str,
    pub name: String,
    pub expected: f64,
    pub computed: f64,
    pub relative_error: f64,
    pub pass: bool,
}

struct Case {
    group: &'static str,
    name: String,
    graph: Graph,
    a: usize,
    b: usize,
    p: Exponent,
    expected: f64,
}

fn cases() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for (k, l) in [(2usize, 3usize), (3, 2), (4, 4)] {
        for p in [1.5, 2.0, 3.0] {
            out.push(Case {
                group: "parallel",
                name: format!("k={k} l={l} p={p}"),
                graph: parallel_paths(k, l)?,
                a: 0,
                b: 1,
                p: Exponent::Finite(p),
                expected: k as f64 / (l as f64).powf(p - 1.0),
            });
        }
    }
    for n in [4usize, 6, 9] {
        for p in [1.5, 2.0, 4.0] {
            let nf = n as f64;
            out.push(Case {
                group: "cycle",
                name: format!("N={n} adjacent p={p}"),
                graph: cycle_graph(n)?,
                a: 0,
                b: 1,
                p: Exponent::Finite(p),
                expected: 1.0 + (nf - 1.0).powf(1.0 - p),
            });
            out.push(Case {
                group: "cycle",
                name: format!("N={n} two-hop p={p}"),
                graph: cycle_graph(n)?,
                a: 0,
                b: 2,
                p: Exponent::Finite(p),
                expected: 2f64.powf(1.0 - p) + (nf - 2.0).powf(1.0 - p),
            });
        }
    }
    for n in [4usize, 6, 10] {
        for p in [2.0, 3.0] {
            out.push(Case {
                group: "complete",
                name: format!("N={n} p={p}"),
                graph: complete_graph(n)?,
                a: 0,
                b: 1,
                p: Exponent::Finite(p),
                expected: 1.0 + (n as f64 - 2.0) / 2f64.powf(p - 1.0),
            });
        }
    }
    for p in [
        Exponent::ONE,
        Exponent::Finite(1.5),
        Exponent::TWO,
        Exponent::Finite(3.0),
        Exponent::Infinite,
    ] {
        // Two edges in series: Mod_p = 2^{1−p}, Mod_∞ = 1/2.
        let expected = match p {
            Exponent::Finite(p) => 2f64.powf(1.0 - p),
            Exponent::Infinite => 0.5,
        };
        out.push(Case {
            group: "path",
            name: format!("P_3 ends p={p}"),
            graph: path_graph(3)?,
            a: 0,
            b: 2,
            p,
            expected,
        });
    }
    Ok(out)
}

/// Runs every case whose group is in `only` (all when empty).
pub fn run(only: &[String], tol: f64, cfg: &SolverConfig) -> Result<Vec<CaseResult>> {
    let mut results = Vec::new();
    for case in cases()? {
        if !only.is_empty() && !only.iter().any(|g| g == case.group) {
            continue;
        }
        let r = modulus(&case.graph, case.a, case.b, case.p, cfg, Method::Auto)?;
        let relative_error = (r.value - case.expected).abs() / case.expected;
        results.push(CaseResult {
            group: case.group,
            name: case.name,
            expected: case.expected,
            computed: r.value,
            relative_error,
            pass: relative_error <= tol,
        });
    }
    Ok(results)
}

pub fn render(results: &[CaseResult], tol: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:<26} {:>14} {:>14} {:>10}  verdict",
        "group", "case", "expected", "computed", "rel.err"
    );
    for r in results {
        let _ = writeln!(
            s,
            "{:<10} {:<26} {:>14.8} {:>14.8} {:>10.2e}  {}",
            r.group,
            r.name,
            r.expected,
            r.computed,
            r.relative_error,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    let _ = writeln!(
        s,
        "{} cases, {} failed at tolerance {:e}",
        results.len(),
        failed,
        tol
    );
    s
}
