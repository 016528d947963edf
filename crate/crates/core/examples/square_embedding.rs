//! Embedding the 4-cycle's d_p metric in Euclidean space, and where it stops.

use pmodulus::embedding::{embeddability, square_p_threshold, square_ratio, DEFAULT_RANK_TOL};
use pmodulus::exponent::Exponent;
use pmodulus::graph::square_graph;
use pmodulus::metrics::distance_matrix;
use pmodulus::modulus::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = square_graph();
    let p0 = square_p_threshold(1e-12)?;
    println!("threshold p0 = {p0:.6}");
    let cfg = SolverConfig::with_tolerance(1e-9);
    for p in [1.5, 2.0, 3.0, 3.8, 4.0, 6.0] {
        let m = distance_matrix(&g, Exponent::Finite(p), &cfg)?;
        let report = embeddability(&m, 3, 0, DEFAULT_RANK_TOL)?;
        println!(
            "p={p}: diagonal/side {:.6} (closed form {:.6}), embeds in R^3: {}",
            m.get(0, 2) / m.get(0, 1),
            square_ratio(Exponent::Finite(p)),
            report.embeddable
        );
        if let Some(points) = &report.coordinates {
            for (label, x) in m.labels().iter().zip(points) {
                let coords: Vec<String> = x.iter().map(|v| format!("{v:+.4}")).collect();
                println!("    {label}: ({})", coords.join(", "));
            }
        }
    }
    Ok(())
}
