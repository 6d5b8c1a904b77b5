//! Renders a carpet level as SVG, with the complete-lines subgraph highlighted.
//!
//! cargo run --example render_svg -- [k] [out.svg]

use fractalsep::fractal::{
    build_complete_lines_subgraph, build_level_graph, render_svg, FractalParams, GraphBudget,
};

fn main() -> fractalsep::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map_or(3, |s| s.parse().expect("k is an integer"));
    let out = args.next().unwrap_or_else(|| format!("carpet_k{k}.svg"));
    let p = FractalParams::carpet();
    let g = build_level_graph(&p, k, GraphBudget::default())?;
    let c = build_complete_lines_subgraph(&p, k, GraphBudget::default())?;
    let svg = render_svg(&g, Some(&c))?;
    std::fs::write(&out, &svg)?;
    println!("{} cells, {} highlighted, {} bytes -> {out}", g.n(), c.n(), svg.len());
    Ok(())
}
