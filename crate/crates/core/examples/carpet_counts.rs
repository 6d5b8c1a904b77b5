//! Vertex and complete-line counts of the Sierpiński carpet graphs against the closed
//! forms `8^k` and `2·6^k − 4^k`.
//!
//! cargo run --release --example carpet_counts -- [k_max]

use fractalsep::fractal::{
    build_complete_lines_subgraph, build_level_graph, complete_lines_count, FractalParams, GraphBudget,
};

fn main() -> fractalsep::Result<()> {
    let k_max: u32 = std::env::args().nth(1).map_or(5, |s| s.parse().expect("k_max is an integer"));
    let p = FractalParams::carpet();
    let budget = GraphBudget::default();
    println!("{p}");
    println!("{:>2} {:>9} {:>9} {:>9} {:>9} {:>6}", "k", "|G_k|", "8^k", "|C_k|", "2·6^k-4^k", "lines");
    for k in 0..=k_max {
        let g = build_level_graph(&p, k, budget)?;
        let c = build_complete_lines_subgraph(&p, k, budget)?;
        println!(
            "{:>2} {:>9} {:>9} {:>9} {:>9} {:>6}",
            k,
            g.n(),
            8u64.pow(k),
            c.n(),
            2 * 6u64.pow(k) - 4u64.pow(k),
            complete_lines_count(&p, k)
        );
    }
    Ok(())
}
