//! Builds the layered cone over the first few carpet levels.
//!
//! cargo run --example hyperbolic_cone

use fractalsep::fractal::{build_cone, FractalParams, GraphBudget};

fn main() -> fractalsep::Result<()> {
    let cone = build_cone(&FractalParams::carpet(), 3, GraphBudget::default())?;
    for (k, level) in cone.levels().iter().enumerate() {
        println!(
            "level {k}: {:>4} vertices, {:>4} edges, {:>4} edges down",
            level.n(),
            level.edge_count(),
            cone.cross_edges(k).len()
        );
    }
    let adj = cone.adjacency();
    println!("cone: {} vertices, {} edges, max degree {}", adj.n(), adj.edge_count(), adj.max_degree());
    Ok(())
}
