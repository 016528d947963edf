//! The two iterative solvers on one pair: the greedy solver grows a small
//! family of paths, the potential solver works on vertex potentials.

use pmodulus::graph::grid_graph;
use pmodulus::modulus::{modulus_greedy, modulus_potential, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = grid_graph(6, 6)?;
    let (a, b) = (0, g.node_count() - 1);
    let cfg = SolverConfig::default();
    for p in [1.2, 1.5, 2.5, 4.0] {
        let greedy = modulus_greedy(&g, a, b, p, &cfg)?;
        let potential = modulus_potential(&g, a, b, p, &cfg)?;
        println!(
            "p={p}: greedy [{:.9}, {:.9}] with {} paths, potential [{:.9}, {:.9}]",
            greedy.lower_bound,
            greedy.upper_bound,
            greedy.active_paths,
            potential.lower_bound,
            potential.upper_bound
        );
    }
    Ok(())
}
