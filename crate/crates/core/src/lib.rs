pub mod cli;
pub mod embedding;
pub mod error;
pub mod exponent;
pub mod graph;
pub mod linalg;
pub mod metrics;
pub mod modulus;
