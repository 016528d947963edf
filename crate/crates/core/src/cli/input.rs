//! Graph specs and list-valued flags.

use std::fs;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::graph::{
    complete_graph, cycle_graph, erdos_renyi_connected, grid_graph, parallel_paths, parse_graph,
    path_graph, square_graph, Graph,
};

/// Loads a graph from a file path or a generator spec:
///
/// ```text
/// gen:path:N   gen:cycle:N   gen:complete:N   gen:square
/// gen:grid:N   gen:grid:R:C  gen:parallel:K:L gen:er:N:DEGREE:SEED
/// ```
pub fn load_graph(spec: &str) -> Result<Graph> {
    match spec.strip_prefix("gen:") {
        Some(rest) => generate(rest),
        None => parse_graph(&fs::read_to_string(spec)?),
    }
}

fn generate(spec: &str) -> Result<Graph> {
    let parts: Vec<&str> = spec.split(':').collect();
    let int = |i: usize| -> Result<usize> {
        let s = parts.get(i).ok_or_else(|| bad_spec(spec))?;
        s.parse().map_err(|_| bad_spec(spec))
    };
    match (parts[0], parts.len()) {
        ("path", 2) => path_graph(int(1)?),
        ("cycle", 2) => cycle_graph(int(1)?),
        ("complete", 2) => complete_graph(int(1)?),
        ("square", 1) => Ok(square_graph()),
        ("grid", 2) => grid_graph(int(1)?, int(1)?),
        ("grid", 3) => grid_graph(int(1)?, int(2)?),
        ("parallel", 3) => parallel_paths(int(1)?, int(2)?),
        ("er", 4) => {
            let degree: f64 = parts[2].parse().map_err(|_| bad_spec(spec))?;
            let seed: u64 = parts[3].parse().map_err(|_| bad_spec(spec))?;
            erdos_renyi_connected(int(1)?, degree, seed)
        }
        _ => Err(bad_spec(spec)),
    }
}

fn bad_spec(spec: &str) -> Error {
    Error::InvalidArgument(format!(
        "unknown generator `gen:{spec}` (expected path:N, cycle:N, complete:N, square, grid:N, grid:R:C, parallel:K:L or er:N:DEGREE:SEED)"
    ))
}

/// Comma-separated exponents, e.g. `1,1.5,2,inf`.
pub fn parse_exponents(text: &str) -> Result<Vec<Exponent>> {
    let list = text
        .split(',')
        .map(|s| s.trim().parse::<Exponent>())
        .collect::<Result<Vec<_>>>()?;
    if list.is_empty() {
        return Err(Error::InvalidArgument("empty exponent list".into()));
    }
    Ok(list)
}

/// Either a comma list of exponents or `LO:HI:COUNT`, evenly spaced inclusive.
pub fn parse_p_grid(text: &str) -> Result<Vec<Exponent>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return parse_exponents(text);
    }
    let bad = || Error::InvalidArgument(format!("bad grid `{text}`, expected LO:HI:COUNT"));
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !(hi >= lo) {
        return Err(bad());
    }
    (0..count)
        .map(|i| {
            let x = if count == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            };
            Exponent::new(x)
        })
        .collect()
}

/// Grid sizes: `A..B` (step 3), `A..B:STEP`, or a comma list.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidArgument(format!("bad size list `{text}`"));
    let sizes: Vec<usize> = if let Some((lo, rest)) = text.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((hi, step)) => (hi, step.trim().parse::<usize>().map_err(|_| bad())?),
            None => (rest, 3),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if step == 0 || hi < lo {
            return Err(bad());
        }
        (lo..=hi).step_by(step).collect()
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "grid sizes must be positive, got `{text}`"
        )));
    }
    Ok(sizes)
}

/// Comma-separated reals, or `LO:HI:COUNT`.
pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("bad list `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if count < 2 || !(hi > lo) {
            return Err(bad());
        }
        return Ok((0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect());
    }
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect()
}
