//! p = 1, 2 and infinity against min cut, effective resistance and hop count
//! on a seeded random graph, with the iterative solver alongside.

use pmodulus::exponent::Exponent;
use pmodulus::graph::{effective_resistance, erdos_renyi_connected, min_cut, shortest_path_hops};
use pmodulus::modulus::{modulus, modulus_potential, Method, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = erdos_renyi_connected(10, 6.0, 42)?;
    let cfg = SolverConfig::default();
    println!("{} nodes, {} edges", g.node_count(), g.edge_count());
    for (a, b) in [(0, 1), (2, 7), (3, 9)] {
        let cut = min_cut(&g, a, b)?.value;
        let mod1 = modulus(&g, a, b, Exponent::ONE, &cfg, Method::Auto)?.value;
        let reff = effective_resistance(&g, a, b)?;
        let mod2 = modulus_potential(&g, a, b, 2.0, &cfg)?;
        let hops = shortest_path_hops(&g, a, b)?;
        let modinf = modulus(&g, a, b, Exponent::Infinite, &cfg, Method::Auto)?.value;
        println!("pair ({a}, {b})");
        println!("  min cut {cut}, Mod_1 {mod1}");
        println!(
            "  1/R_eff {:.10}, Mod_2 in [{:.10}, {:.10}]",
            1.0 / reff,
            mod2.lower_bound,
            mod2.upper_bound
        );
        println!("  1/hops {:.10}, Mod_inf {modinf:.10}", 1.0 / hops as f64);
    }
    Ok(())
}
