//! Edge-list and JSON graph input, and the errors bad input produces.

use pmodulus::graph::{parse_graph, parse_graph_json};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph("# a triangle with a tail\nx y\ny z\nz x\nz tail\nlonely_is_not_allowed\n");
    println!("edge list with a stray node: {}", g.unwrap_err());

    let g = parse_graph("x y\ny z\nz x\nz tail\n")?;
    println!(
        "{} nodes, {} edges: {:?}",
        g.node_count(),
        g.edge_count(),
        g.labels()
    );

    let g = parse_graph_json(r#"{"nodes": ["u", "v", "w"], "edges": [["u", "v"], ["v", "w"]]}"#)?;
    println!("json: {}", g.to_json());

    for bad in ["a a", "a b\nb a", "a b c"] {
        println!("{bad:?}: {}", parse_graph(bad).unwrap_err());
    }
    Ok(())
}
