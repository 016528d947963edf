//! d_p between two nodes of a small graph as p runs from 1 to infinity.

use pmodulus::exponent::Exponent;
use pmodulus::graph::parse_graph;
use pmodulus::modulus::{modulus, Method, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph("s a\ns b\na b\na t\nb t\nb c\nc t\n")?;
    let (s, t) = (g.node_by_label("s")?, g.node_by_label("t")?);
    let cfg = SolverConfig::default();
    println!(
        "{:>6} {:>14} {:>14} {:>10}  solver",
        "p", "Mod_p", "d_p", "gap"
    );
    for p in ["1", "1.25", "1.5", "2", "3", "5", "10", "inf"] {
        let p: Exponent = p.parse()?;
        let r = modulus(&g, s, t, p, &cfg, Method::Auto)?;
        println!(
            "{:>6} {:>14.8} {:>14.8} {:>10.1e}  {:?}",
            p.to_string(),
            r.value,
            r.distance(),
            r.relative_gap(),
            r.solved_by
        );
    }
    Ok(())
}
