//! A small antisnowflaking-exponent experiment on seeded random graphs,
//! printed as CSV.

use pmodulus::metrics::{er_experiment, ExperimentConfig};
use pmodulus::modulus::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        graphs: 10,
        ..ExperimentConfig::default()
    };
    let estimate = er_experiment(&cfg, &SolverConfig::default())?;
    estimate.write_csv(std::io::stdout().lock())?;
    println!("margin min(t(p) - p/(p-1)) = {:.6}", estimate.margin());
    Ok(())
}
