//! Acceptance criteria, one test each. Every test prints `PASS ACn ...` or
//! `FAIL ACn ...` per case and asserts at the end.

mod common;

use std::time::{Duration, Instant};

use common::{brute_force_modulus, er_graphs, report};
use pmodulus::cli::bench;
use pmodulus::embedding::{
    embeddability, schoenberg_matrix, square_eigencurve, square_metric, square_p_threshold,
    symmetric_eigen, DEFAULT_RANK_TOL,
};
use pmodulus::exponent::Exponent;
use pmodulus::graph::{
    complete_graph, cycle_graph, enumerate_simple_paths, min_cut, parallel_paths, path_graph,
    shortest_path_hops, square_graph, Density, Graph, Path, ResistanceSolver,
};
use pmodulus::metrics::{
    asfe_graph, default_p_grid, distance_matrix, er_experiment, triangle_audit,
    ultrametric_violations, ExperimentConfig,
};
use pmodulus::modulus::{
    beurling_verify, modulus, modulus_greedy, modulus_potential, rho_shortest_path, Method,
    SolverConfig,
};

const CLOSED_FORM_REL: f64 = 1e-5;
const SOLVER_TOL: f64 = 1e-6;

fn finite(p: f64) -> Exponent {
    Exponent::Finite(p)
}

fn check_all(id: &str, results: &[(bool, String)], elapsed: Duration, budget: Duration) {
    for (ok, detail) in results {
        report(id, *ok, detail);
    }
    let in_time = elapsed < budget;
    report(id, in_time, &format!("runtime {elapsed:?} < {budget:?}"));
    let failed = results.iter().filter(|(ok, _)| !ok).count();
    assert!(failed == 0 && in_time, "{id}: {failed} failing cases");
}

fn closed_form_case(
    g: &Graph,
    a: usize,
    b: usize,
    p: f64,
    expected: f64,
    name: String,
) -> (bool, String) {
    let cfg = SolverConfig::default();
    let got = modulus(g, a, b, finite(p), &cfg, Method::Potential)
        .unwrap()
        .value;
    let rel = (got - expected).abs() / expected;
    (
        rel <= CLOSED_FORM_REL,
        format!("{name}: Mod={got:.10} expected {expected:.10} rel.err {rel:.1e} <= {CLOSED_FORM_REL:e}"),
    )
}

#[test]
fn ac01_parallel_paths() {
    let start = Instant::now();
    let mut results = Vec::new();
    for (k, l) in [(2usize, 3usize), (3, 2), (4, 4)] {
        let g = parallel_paths(k, l).unwrap();
        for p in [1.5, 2.0, 3.0] {
            let expected = k as f64 / (l as f64).powf(p - 1.0);
            results.push(closed_form_case(
                &g,
                0,
                1,
                p,
                expected,
                format!("k={k} l={l} p={p}"),
            ));
        }
    }
    check_all("AC1", &results, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn ac02_cycles() {
    let start = Instant::now();
    let mut results = Vec::new();
    for n in [4usize, 6, 9] {
        let g = cycle_graph(n).unwrap();
        let nf = n as f64;
        for p in [1.5, 2.0, 4.0] {
            let adjacent = 1.0 + (nf - 1.0).powf(1.0 - p);
            let two_hop = 2f64.powf(1.0 - p) + (nf - 2.0).powf(1.0 - p);
            results.push(closed_form_case(
                &g,
                0,
                1,
                p,
                adjacent,
                format!("C_{n} adjacent p={p}"),
            ));
            results.push(closed_form_case(
                &g,
                0,
                2,
                p,
                two_hop,
                format!("C_{n} two-hop p={p}"),
            ));
        }
    }
    check_all("AC2", &results, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn ac03_complete_graphs() {
    let start = Instant::now();
    let mut results = Vec::new();
    let cfg = SolverConfig::default();
    for n in [4usize, 6, 10] {
        let g = complete_graph(n).unwrap();
        for p in [2.0, 3.0] {
            let expected = 1.0 + (n as f64 - 2.0) / 2f64.powf(p - 1.0);
            results.push(closed_form_case(
                &g,
                0,
                1,
                p,
                expected,
                format!("K_{n} p={p}"),
            ));
            let m = distance_matrix(&g, finite(p), &cfg).unwrap();
            let (lo, hi) = m
                .rows()
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i))
                .fold((f64::INFINITY, 0f64), |(lo, hi), (_, &d)| {
                    (lo.min(d), hi.max(d))
                });
            results.push((
                hi - lo <= 1e-8,
                format!("K_{n} p={p}: pairwise d_p spread {:.1e} <= 1e-8", hi - lo),
            ));
        }
    }
    check_all("AC3", &results, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn ac04_special_cases() {
    let start = Instant::now();
    let cfg = SolverConfig::default();
    let mut worst_d2 = 0f64;
    let mut results = Vec::new();
    for (seed, g) in er_graphs() {
        let resistance = ResistanceSolver::new(&g).unwrap();
        let n = g.node_count();
        let (mut d2_ok, mut inf_ok, mut one_ok) = (true, true, true);
        for a in 0..n {
            for b in a + 1..n {
                let d2 = modulus_potential(&g, a, b, 2.0, &cfg).unwrap().distance();
                let reference = resistance.resistance(a, b).sqrt();
                let rel = (d2 - reference).abs() / reference;
                worst_d2 = worst_d2.max(rel);
                d2_ok &= rel <= 1e-5;

                let dinf = modulus(&g, a, b, Exponent::Infinite, &cfg, Method::Auto)
                    .unwrap()
                    .distance();
                inf_ok &= dinf == shortest_path_hops(&g, a, b).unwrap() as f64;

                let d1 = modulus(&g, a, b, Exponent::ONE, &cfg, Method::Auto)
                    .unwrap()
                    .distance();
                one_ok &= d1 == 1.0 / min_cut(&g, a, b).unwrap().value as f64;
            }
        }
        results.push((
            d2_ok && inf_ok && one_ok,
            format!("seed {seed}: d_2=sqrt(R_eff) within 1e-5 {d2_ok}, d_inf=hops {inf_ok}, d_1=1/cut {one_ok}"),
        ));
    }
    results.push((
        worst_d2 <= 1e-5,
        format!("worst d_2 rel.err {worst_d2:.1e} <= 1e-5"),
    ));
    check_all("AC4", &results, start.elapsed(), Duration::from_secs(600));
}

#[test]
fn ac05_greedy_vs_brute_force() {
    let start = Instant::now();
    let cfg = SolverConfig::with_tolerance(SOLVER_TOL);
    let allowed = 2.0 * SOLVER_TOL;
    let mut results = Vec::new();
    for (seed, g) in er_graphs() {
        let (a, b) = (0, g.node_count() - 1);
        let paths = enumerate_simple_paths(&g, a, b, 1_000_000).unwrap().len();
        for p in [1.5, 2.5] {
            let oracle = brute_force_modulus(&g, a, b, p, 1e-9);
            let greedy = modulus_greedy(&g, a, b, p, &cfg).unwrap().value;
            let rel = (greedy - oracle.mid()).abs() / oracle.mid();
            results.push((
                rel <= allowed && oracle.gap() <= 1e-8,
                format!(
                    "seed {seed} p={p} over {paths} paths: greedy {greedy:.10} oracle {:.10} (gap {:.1e}) rel.err {rel:.1e} <= {allowed:e}",
                    oracle.mid(),
                    oracle.gap()
                ),
            ));
        }
    }
    check_all("AC5", &results, start.elapsed(), Duration::from_secs(600));
}

#[test]
fn ac06_metric_properties() {
    let start = Instant::now();
    let cfg = SolverConfig::with_tolerance(SOLVER_TOL);
    let mut results = Vec::new();
    for (seed, g) in er_graphs() {
        for p in [finite(1.2), Exponent::TWO, finite(5.0), Exponent::Infinite] {
            let m = distance_matrix(&g, p, &cfg).unwrap();
            let audit = triangle_audit(&m, 1.0, SOLVER_TOL);
            let mut ok = audit.violations.is_empty();
            let mut detail = format!(
                "seed {seed} p={p}: {} triangle violations, {} flat",
                audit.violations.len(),
                audit.flat.len()
            );
            for eps in [0.3, 0.7] {
                let snow = triangle_audit(&m.powered(eps), 1.0, SOLVER_TOL);
                ok &= snow.violations.is_empty();
                detail += &format!(", d^{eps}: {} violations", snow.violations.len());
            }
            results.push((ok, detail));
        }
        let m1 = distance_matrix(&g, Exponent::ONE, &cfg).unwrap();
        let ultra = ultrametric_violations(&m1, 1e-12).len();
        results.push((
            ultra == 0,
            format!("seed {seed} p=1: {ultra} ultrametric violations"),
        ));
    }
    check_all("AC6", &results, start.elapsed(), Duration::from_secs(600));
}

#[test]
fn ac07_monotonicity() {
    let start = Instant::now();
    let cfg = SolverConfig::with_tolerance(SOLVER_TOL);
    let ps = [1.2, 1.5, 2.0, 3.0, 5.0];
    // Both sides carry relative error up to the solver tolerance.
    let slack = 2.0 * SOLVER_TOL;
    let mut results = Vec::new();
    for (seed, g) in er_graphs() {
        let edges = g.edge_count() as f64;
        let (mut decr, mut holder) = (0, 0);
        for b in 1..g.node_count() {
            let values: Vec<f64> = ps
                .iter()
                .map(|&p| {
                    modulus(&g, 0, b, finite(p), &cfg, Method::Auto)
                        .unwrap()
                        .value
                })
                .collect();
            for i in 1..ps.len() {
                if values[i] > values[i - 1] * (1.0 + slack) {
                    decr += 1;
                }
                let lhs = (values[i - 1] / edges).powf(1.0 / ps[i - 1]);
                let rhs = (values[i] / edges).powf(1.0 / ps[i]);
                if lhs > rhs * (1.0 + slack) {
                    holder += 1;
                }
            }
        }
        results.push((
            decr == 0 && holder == 0,
            format!("seed {seed}: Mod_p non-increasing ({decr} breaks), (Mod_p/|E|)^(1/p) non-decreasing ({holder} breaks)"),
        ));
    }
    check_all("AC7", &results, start.elapsed(), Duration::from_secs(600));
}

#[test]
fn ac08_asfe() {
    let start = Instant::now();
    let cfg = SolverConfig::with_tolerance(1e-10);
    let mut results = Vec::new();
    let p3 = path_graph(3).unwrap();
    for p in [1.5, 2.0, 4.0] {
        let s = asfe_graph(&distance_matrix(&p3, finite(p), &cfg).unwrap());
        let expected = p / (p - 1.0);
        results.push((
            (s - expected).abs() <= 1e-6,
            format!("P_3 p={p}: ASFE {s:.9} expected p/(p-1) = {expected:.9} within 1e-6"),
        ));
    }
    let (n, p) = (4.0f64, 2.0f64);
    let t0 = p
        / ((1.0 + (n - 1.0).powf(1.0 - p)) / (2f64.powf(1.0 - p) + (n - 2.0).powf(1.0 - p))).log2();
    let s = asfe_graph(&distance_matrix(&square_graph(), finite(p), &cfg).unwrap());
    results.push((
        (s - t0).abs() <= 1e-6 && (s - 4.8188).abs() <= 5e-5,
        format!("C_4 p=2: ASFE {s:.6} vs t0 {t0:.6} within 1e-6, approx 4.8188"),
    ));
    check_all("AC8", &results, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn ac09_er_experiment() {
    let start = Instant::now();
    let cfg = ExperimentConfig {
        graphs: 50,
        nodes: 10,
        expected_degree: 6.0,
        p_grid: default_p_grid(),
        seed: 0,
    };
    assert_eq!(cfg.p_grid.len(), 15);
    assert_eq!(cfg.p_grid[0], finite(1.2));
    assert_eq!(cfg.p_grid[14], finite(5.0));
    let estimate = er_experiment(&cfg, &SolverConfig::with_tolerance(SOLVER_TOL)).unwrap();
    let results: Vec<(bool, String)> = estimate
        .rows
        .iter()
        .map(|row| {
            (
                row.t_of_p >= row.q_of_p - 1e-6,
                format!(
                    "p={:.4}: t(p) {:.6} >= p/(p-1) {:.6} - 1e-6",
                    row.p.value(),
                    row.t_of_p,
                    row.q_of_p
                ),
            )
        })
        .collect();
    check_all("AC9", &results, start.elapsed(), Duration::from_secs(600));
}

/// Schoenberg eigenvalues of the unit square with diagonals 1..β, base a:
/// `β²` and the roots of `λ² − (4 + β²)λ + 8β² − 4β⁴`.
fn square_eigen_oracle(beta: f64) -> [f64; 3] {
    let b2 = beta * beta;
    let tr = 4.0 + b2;
    let disc = (tr * tr - 32.0 * b2 + 16.0 * b2 * b2).sqrt();
    let mut v = [b2, 0.5 * (tr + disc), 0.5 * (tr - disc)];
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

#[test]
fn ac10_embedding() {
    let start = Instant::now();
    let mut results = Vec::new();

    let step = 0.01;
    let betas: Vec<f64> = (1..=200).map(|i| i as f64 * step).collect();
    let curve = square_eigencurve(&betas).unwrap();
    let worst = curve
        .rows
        .iter()
        .map(|(beta, l)| {
            let o = square_eigen_oracle(*beta);
            (0..3).map(|k| (l[k] - o[k]).abs()).fold(0f64, f64::max)
        })
        .fold(0f64, f64::max);
    results.push((
        worst <= 1e-12,
        format!("eigencurve vs closed form: max abs err {worst:.1e} <= 1e-12"),
    ));
    let root2 = 2f64.sqrt();
    let crossing_ok = curve
        .crossing
        .is_some_and(|(lo, hi)| lo >= root2 - step && hi <= root2 + step);
    results.push((
        crossing_ok,
        format!("crossing {:?} within sqrt(2) +- {step}", curve.crossing),
    ));

    let p0 = square_p_threshold(1e-12).unwrap();
    results.push((
        (p0 - 3.88).abs() <= 0.01,
        format!("p0 = {p0:.6}, 3.88 +- 0.01"),
    ));

    let cfg = SolverConfig::with_tolerance(1e-10);
    let g = square_graph();
    for (p, expect) in [
        (1.5, true),
        (2.0, true),
        (p0 - 0.05, true),
        (p0 + 0.05, false),
        (6.0, false),
    ] {
        let m = distance_matrix(&g, finite(p), &cfg).unwrap();
        let r = embeddability(&m, 3, 0, DEFAULT_RANK_TOL).unwrap();
        let mut ok = r.embeddable == expect;
        let mut detail = format!(
            "C_4 d_p p={p:.4}: embeds in R^3 = {} (expected {expect})",
            r.embeddable
        );
        if let Some(err) = r.roundtrip_error {
            ok &= err <= 1e-8;
            detail += &format!(", round-trip {err:.1e} <= 1e-8");
        }
        results.push((ok, detail));
    }
    // Independent eigen check on the square metric at the flip.
    let s = schoenberg_matrix(&square_metric(root2).unwrap(), 0).unwrap();
    let v = symmetric_eigen(&s, 1e-14).unwrap().values;
    results.push((
        v[2].abs() <= 1e-12,
        format!("beta=sqrt(2): smallest eigenvalue {:.1e}", v[2]),
    ));

    check_all("AC10", &results, start.elapsed(), Duration::from_secs(10));
}

fn beurling_case(
    g: &Graph,
    family: &[Path],
    rho: Vec<f64>,
    p: f64,
    bump: usize,
    name: &str,
) -> (bool, String) {
    let (a, b) = (family[0].start(), family[0].end());
    let density = Density::for_graph(g, rho.clone()).unwrap();
    let admissible = rho_shortest_path(g, &density, a, b).unwrap().1 >= 1.0 - 1e-12;
    let accepted = beurling_verify(g, family, &density, p, 1e-9)
        .unwrap()
        .extremal;
    let mut bumped = rho;
    bumped[bump] += 0.2;
    let rejected = !beurling_verify(g, family, &Density::for_graph(g, bumped).unwrap(), p, 1e-9)
        .unwrap()
        .extremal;
    (
        admissible && accepted && rejected,
        format!(
            "{name} p={p}: admissible {admissible}, accepted {accepted}, +0.2 rejected {rejected}"
        ),
    )
}

#[test]
fn ac11_beurling() {
    let start = Instant::now();
    let mut results = Vec::new();
    for n in [4usize, 6, 9] {
        let g = cycle_graph(n).unwrap();
        for p in [1.5, 2.0, 4.0] {
            for (b, short) in [(1usize, 1.0), (2, 0.5)] {
                let family = enumerate_simple_paths(&g, 0, b, 10).unwrap();
                let mut rho = vec![0.0; g.edge_count()];
                for path in &family {
                    let w = if path.hops() == b {
                        short
                    } else {
                        1.0 / (n - b) as f64
                    };
                    for &e in path.edges() {
                        rho[e] = w;
                    }
                }
                let bump = family[0].edges()[0];
                let name = format!("C_{n} pair (0,{b})");
                results.push(beurling_case(&g, &family, rho, p, bump, &name));
            }
        }
    }
    for n in [4usize, 6, 10] {
        let g = complete_graph(n).unwrap();
        let (a, b) = (0, 1);
        let mut family = vec![Path::from_vertices(&g, vec![a, b]).unwrap()];
        family.extend((2..n).map(|x| Path::from_vertices(&g, vec![a, x, b]).unwrap()));
        let mut rho = vec![0.0; g.edge_count()];
        rho[g.edge_between(a, b).unwrap()] = 1.0;
        for x in 2..n {
            rho[g.edge_between(a, x).unwrap()] = 0.5;
            rho[g.edge_between(x, b).unwrap()] = 0.5;
        }
        let bump = g.edge_between(a, 2).unwrap();
        for p in [2.0, 3.0] {
            results.push(beurling_case(
                &g,
                &family,
                rho.clone(),
                p,
                bump,
                &format!("K_{n}"),
            ));
        }
    }
    check_all("AC11", &results, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn ac12_bench() {
    let start = Instant::now();
    let ps: Vec<Exponent> = ["1", "1.5", "2", "2.5", "inf"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let series = bench::series(&ps, &[bench::BenchMethod::Lap, bench::BenchMethod::Opt]);
    let sizes = [3usize, 6, 9, 12, 15];
    let rows = bench::run(&sizes, &series, 1, &SolverConfig::default()).unwrap();
    let mut buf = Vec::new();
    bench::write_csv(&mut buf, "acceptance", &series, &rows).unwrap();
    let text = String::from_utf8(buf).unwrap();

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let width = 1 + 2 * series.len();
    let mut results = vec![(
        header.len() == width && header[0] == "n" && header.iter().any(|h| h == "2 (lap)"),
        format!("header {header:?}"),
    )];
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    results.push((
        records.len() == sizes.len(),
        format!("{} rows for sizes {sizes:?}", records.len()),
    ));
    for (record, &n) in records.iter().zip(&sizes) {
        let values: Vec<f64> = record.iter().skip(1).map(|x| x.parse().unwrap()).collect();
        let ok = record.len() == width
            && record[0].parse::<usize>() == Ok(n)
            && values.iter().all(|v| v.is_finite() && *v >= 0.0);
        // Corner-to-corner hops on an n x n grid.
        let hops = values[series.len() + series.len() - 1];
        results.push((
            ok && hops == (2 * (n - 1)) as f64,
            format!("n={n}: {} finite columns, d_inf = {hops}", record.len()),
        ));
    }
    check_all("AC12", &results, start.elapsed(), Duration::from_secs(120));
}
