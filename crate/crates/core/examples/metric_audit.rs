//! Triangle and ultrametric audits of d_p, and the antisnowflaking exponent.

use pmodulus::exponent::Exponent;
use pmodulus::graph::erdos_renyi_connected;
use pmodulus::metrics::{
    asfe_graph, distance_matrix, tightest_triple, triangle_audit, ultrametric_violations,
};
use pmodulus::modulus::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = erdos_renyi_connected(8, 4.0, 3)?;
    let cfg = SolverConfig::default();
    for p in ["1", "1.5", "2", "4", "inf"] {
        let p: Exponent = p.parse()?;
        let m = distance_matrix(&g, p, &cfg)?;
        let audit = triangle_audit(&m, 1.0, cfg.tolerance);
        let ultra = ultrametric_violations(&m, 1e-12).len();
        let asfe = asfe_graph(&m);
        print!(
            "p={p:<4} metric={} flat={} ultrametric violations={ultra:<3} ASFE={asfe:.6}",
            audit.is_metric(),
            audit.flat.len()
        );
        match tightest_triple(&m) {
            Some(((a, b, c), _)) => println!("  via ({a}, {b}, {c})"),
            None => println!(),
        }
    }
    Ok(())
}
