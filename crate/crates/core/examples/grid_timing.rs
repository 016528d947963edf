//! Corner-to-corner d_p on square grids with wall-clock timings.

use std::time::Instant;

use pmodulus::exponent::Exponent;
use pmodulus::graph::grid_graph;
use pmodulus::modulus::{modulus, Method, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SolverConfig::default();
    let columns = [
        (Exponent::ONE, Method::Auto),
        (Exponent::Finite(1.5), Method::Potential),
        (Exponent::TWO, Method::Auto),
        (Exponent::TWO, Method::Potential),
        (Exponent::Infinite, Method::Auto),
    ];
    for n in (3..=15).step_by(3) {
        let g = grid_graph(n, n)?;
        let mut line = format!("{n:>3}");
        for (p, method) in columns {
            let start = Instant::now();
            let d = modulus(&g, 0, n * n - 1, p, &cfg, method)?.distance();
            line.push_str(&format!(
                "  d={d:.5} {:>8.2}ms",
                start.elapsed().as_secs_f64() * 1e3
            ));
        }
        println!("{line}");
    }
    Ok(())
}
