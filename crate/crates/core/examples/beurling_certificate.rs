//! Checks candidate extremal densities on a cycle with Beurling's criterion.

use pmodulus::graph::{cycle_graph, Density, Path};
use pmodulus::modulus::beurling_verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 6;
    let g = cycle_graph(n)?;
    // Nodes 0 and 2 with 1 between them: two arcs of 2 and n - 2 edges.
    let short = Path::from_vertices(&g, vec![0, 1, 2])?;
    let long = Path::from_vertices(
        &g,
        (2..=n)
            .rev()
            .map(|v| v % n)
            .rev()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect(),
    )?;
    let family = vec![short.clone(), long.clone()];
    let mut rho = vec![0.0; g.edge_count()];
    for &e in short.edges() {
        rho[e] = 0.5;
    }
    for &e in long.edges() {
        rho[e] = 1.0 / (n - 2) as f64;
    }
    let p = 3.0;
    let cert = beurling_verify(&g, &family, &Density::new(rho.clone())?, p, 1e-9)?;
    println!("extremal density: {}", cert.extremal);
    println!("  multipliers {:?}", cert.multipliers);

    rho[short.edges()[0]] += 0.2;
    let cert = beurling_verify(&g, &family, &Density::new(rho)?, p, 1e-9)?;
    println!("perturbed density: {}", cert.extremal);
    println!("  length defects {:?}", cert.length_defects);
    Ok(())
}
