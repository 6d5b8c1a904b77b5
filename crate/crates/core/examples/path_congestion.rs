//! Canonical all-pairs paths on the carpet's complete-lines subgraphs and the congestion
//! lower bound `n²/(8m)`.
//!
//! cargo run --release --example path_congestion -- [k_max]

use fractalsep::fractal::{build_complete_lines_subgraph, FractalParams, GraphBudget};
use fractalsep::separation::{
    constructive_cut, path_lower_bound, CanonicalPaths, PathSystem, DEFAULT_MAX_PAIRS,
};

fn main() -> fractalsep::Result<()> {
    let k_max: u32 = std::env::args().nth(1).map_or(3, |s| s.parse().expect("k_max is an integer"));
    let p = FractalParams::carpet();
    for k in 0..=k_max {
        let g = build_complete_lines_subgraph(&p, k, GraphBudget::default())?;
        let ps = PathSystem::build(g.adjacency(), &CanonicalPaths::new(&g)?, DEFAULT_MAX_PAIRS)?;
        let witness = constructive_cut(&g)?.result;
        let b = path_lower_bound(&ps, Some(&witness));
        println!(
            "k = {k}: n = {:>5} pairs = {:>8} max congestion = {:>7} (20·18^k = {:>7}) bound = {} certified = {}",
            ps.n,
            ps.pair_count,
            ps.max_congestion,
            20 * 18u64.pow(k),
            b.bound,
            b.certified
        );
    }
    Ok(())
}
