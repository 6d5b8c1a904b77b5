//! The sparse-plane cutter on carpet and Menger sponge levels, with its plane steps.
//!
//! cargo run --release --example constructive_cut

use fractalsep::fractal::{build_level_graph, FractalParams, GraphBudget};
use fractalsep::separation::{constructive_cut, cutter_constant};

fn main() -> fractalsep::Result<()> {
    for (p, k_max) in [(FractalParams::carpet(), 6), (FractalParams::menger(), 3)] {
        println!("{p}: C(params) = {:?}", cutter_constant(&p));
        for k in 1..=k_max {
            let g = build_level_graph(&p, k, GraphBudget::default())?;
            let c = constructive_cut(&g)?;
            println!(
                "  k = {k}: n = {:>7} planes = {:>5} cut = {:>5} largest = {:>7} envelope = {:.0}",
                g.n(),
                c.plane_vertices,
                c.result.cut_size(),
                c.result.largest_component(),
                c.bound.as_ref().map_or(f64::NAN, |b| b.envelope)
            );
        }
        let g = build_level_graph(&p, 2, GraphBudget::default())?;
        for s in constructive_cut(&g)?.steps {
            println!(
                "    phase {} level {} x_{} = {:>3}: {:>3} vertices (bound {})",
                s.phase, s.level, s.axis, s.offset, s.removed, s.bound
            );
        }
    }
    Ok(())
}
