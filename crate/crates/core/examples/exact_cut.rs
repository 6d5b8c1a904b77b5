//! Exact balanced cuts by branch and bound on small carpet graphs.
//!
//! cargo run --release --example exact_cut

use fractalsep::fractal::{build_complete_lines_subgraph, build_level_graph, FractalParams, GraphBudget};
use fractalsep::separation::{cut_epsilon_exact, SearchBudget};

fn main() -> fractalsep::Result<()> {
    let p = FractalParams::carpet();
    let budget = GraphBudget::default();
    let graphs = [
        ("C_1", build_complete_lines_subgraph(&p, 1, budget)?),
        ("C_2", build_complete_lines_subgraph(&p, 2, budget)?),
        ("G_2", build_level_graph(&p, 2, budget)?),
    ];
    for (name, g) in &graphs {
        for eps in [0.25, 0.5, 0.75] {
            let r = cut_epsilon_exact(g, eps, SearchBudget::default(), None)?;
            println!(
                "{name} (n = {:>2}) eps = {eps:<4} cut = {:>2} optimal = {:<5} largest = {:>2} cutset = {:?}",
                g.n(),
                r.cut_size(),
                r.proved_optimal,
                r.largest_component(),
                r.cutset.iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>()
            );
        }
    }
    Ok(())
}
