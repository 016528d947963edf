//! Shared fixtures and an independent modulus oracle for the integration tests.
#![allow(dead_code)]

use pmodulus::graph::{derive_seeds, enumerate_simple_paths, erdos_renyi_connected, Graph, Path};

pub const MASTER_SEED: u64 = 0;
pub const GRAPHS: usize = 20;
pub const NODES: usize = 10;
pub const DEGREE: f64 = 6.0;

/// The twenty seeded random graphs shared by several criteria.
pub fn er_graphs() -> Vec<(u64, Graph)> {
    derive_seeds(MASTER_SEED, GRAPHS)
        .into_iter()
        .map(|s| {
            (
                s,
                erdos_renyi_connected(NODES, DEGREE, s).expect("generator"),
            )
        })
        .collect()
}

pub fn close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * y.abs().max(f64::MIN_POSITIVE)
}

pub fn report(id: &str, ok: bool, detail: &str) {
    println!("{} {id} {detail}", if ok { "PASS" } else { "FAIL" });
}

/// Certified bracket on `Mod_p` from the oracle.
#[derive(Debug, Clone, Copy)]
pub struct OracleBracket {
    pub lower: f64,
    pub upper: f64,
}

impl OracleBracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn gap(&self) -> f64 {
        (self.upper - self.lower) / self.upper
    }
}

/// Brute-force `Mod_p` over every simple `a`–`b` path.
///
/// Works on the probability dual: minimize `Σ η_e^q` over `η = Nᵀμ`, `μ` a
/// distribution on paths, `q = p/(p−1)`. Pairwise Frank-Wolfe steps on a
/// working set, with periodic scans of the full path list. Both ends of
/// the bracket are checked against the full list:
///
/// * lower: the Lagrangian value at `λ = sμ` with the best scale `s`.
/// * upper: `ρ ∝ η^{q−1}` scaled so its shortest path has length 1.
pub fn brute_force_modulus(g: &Graph, a: usize, b: usize, p: f64, rel_gap: f64) -> OracleBracket {
    let paths = enumerate_simple_paths(g, a, b, 1_000_000).expect("enumeration");
    let rows: Vec<Vec<usize>> = paths
        .iter()
        .map(|path: &Path| path.edges().to_vec())
        .collect();
    let m = g.edge_count();
    let q = p / (p - 1.0);

    let mut weights: Vec<(usize, f64)> = vec![(shortest_by_hops(&rows), 1.0)];
    let mut eta = vec![0.0; m];
    let mut best = OracleBracket {
        lower: 0.0,
        upper: f64::INFINITY,
    };
    for _scan in 0..500 {
        rebuild(&rows, &weights, &mut eta);
        for _ in 0..2000 {
            if !pairwise_step(&rows, &mut weights, &mut eta, q, None) {
                break;
            }
        }
        rebuild(&rows, &weights, &mut eta);
        let rho: Vec<f64> = eta.iter().map(|&x| x.powf(q - 1.0)).collect();
        let lengths: Vec<f64> = rows
            .iter()
            .map(|r| r.iter().map(|&e| rho[e]).sum())
            .collect();
        let (argmin, &shortest) = lengths
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.total_cmp(y.1))
            .unwrap();
        let upper = rho.iter().map(|r| (r / shortest).powf(p)).sum::<f64>();
        let lower = lagrangian_lower(&eta, p, q);
        best.lower = best.lower.max(lower);
        best.upper = best.upper.min(upper);
        if best.gap() <= rel_gap {
            break;
        }
        if !weights.iter().any(|&(i, _)| i == argmin) {
            weights.push((argmin, 0.0));
        }
        // One full pairwise step towards the globally best path.
        pairwise_step(&rows, &mut weights, &mut eta, q, Some(argmin));
    }
    best
}

fn shortest_by_hops(rows: &[Vec<usize>]) -> usize {
    (0..rows.len()).min_by_key(|&i| rows[i].len()).unwrap()
}

fn rebuild(rows: &[Vec<usize>], weights: &[(usize, f64)], eta: &mut [f64]) {
    eta.iter_mut().for_each(|x| *x = 0.0);
    for &(i, w) in weights {
        for &e in &rows[i] {
            eta[e] += w;
        }
    }
}

/// Moves mass from the working-set path with the largest gradient to the one
/// with the smallest (or to `toward`), with an exact line search. Returns
/// false once the working set is optimal to rounding.
fn pairwise_step(
    rows: &[Vec<usize>],
    weights: &mut [(usize, f64)],
    eta: &mut [f64],
    q: f64,
    toward: Option<usize>,
) -> bool {
    let grad = |i: usize| -> f64 { rows[i].iter().map(|&e| eta[e].powf(q - 1.0)).sum() };
    let mut away = None;
    let mut good = None;
    for (k, &(i, w)) in weights.iter().enumerate() {
        let gi = grad(i);
        if w > 0.0 && away.is_none_or(|(_, ga)| gi > ga) {
            away = Some((k, gi));
        }
        if good.is_none_or(|(_, gg)| gi < gg) {
            good = Some((k, gi));
        }
    }
    if let Some(t) = toward {
        let k = weights.iter().position(|&(i, _)| i == t).unwrap();
        good = Some((k, grad(t)));
    }
    let ((ka, ga), (kg, gg)) = (away.unwrap(), good.unwrap());
    if ka == kg || ga - gg <= 1e-15 * ga {
        return false;
    }
    let (ia, ig) = (weights[ka].0, weights[kg].0);
    let mut delta: Vec<(usize, f64)> = Vec::new();
    for &e in &rows[ig] {
        delta.push((e, 1.0));
    }
    for &e in &rows[ia] {
        match delta.iter_mut().find(|(f, _)| *f == e) {
            Some(d) => d.1 -= 1.0,
            None => delta.push((e, -1.0)),
        }
    }
    let slope = |t: f64| -> f64 {
        delta
            .iter()
            .map(|&(e, d)| d * (eta[e] + t * d).max(0.0).powf(q - 1.0))
            .sum()
    };
    let tmax = weights[ka].1;
    let t = if slope(tmax) <= 0.0 {
        tmax
    } else {
        let (mut lo, mut hi) = (0.0, tmax);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    if t <= 0.0 {
        return false;
    }
    for &(e, d) in &delta {
        eta[e] = (eta[e] + t * d).max(0.0);
    }
    weights[ka].1 -= t;
    weights[kg].1 += t;
    if weights[ka].1 <= 1e-300 {
        weights[ka].1 = 0.0;
    }
    true
}

/// `max_s s − (p−1)·Σ(sη/p)^q` evaluated in closed form.
fn lagrangian_lower(eta: &[f64], p: f64, q: f64) -> f64 {
    let c = (p - 1.0) * p.powf(-q) * eta.iter().map(|x| x.powf(q)).sum::<f64>();
    let s = (c * q).powf(-1.0 / (q - 1.0));
    s - c * s.powf(q)
}
