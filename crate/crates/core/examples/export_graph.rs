//! Writes a level graph as a JSON header plus edge list and reads it back.
//!
//! cargo run --example export_graph -- [out_dir]

use std::fs;
use std::path::PathBuf;

use fractalsep::fractal::{
    build_level_graph, parse_graph, write_edge_list, write_header, FractalParams, GraphBudget,
};

fn main() -> fractalsep::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    let p = FractalParams::new(2, 5, [1, 3], 1)?;
    let g = build_level_graph(&p, 2, GraphBudget::default())?;

    let header = dir.join("s25_k2.json");
    let edges = dir.join("s25_k2.edges");
    fs::write(&header, write_header(&g)?)?;
    fs::write(&edges, write_edge_list(&g))?;
    println!("{p} level 2: {} vertices, {} edges", g.n(), g.edge_count());
    println!("wrote {} and {}", header.display(), edges.display());

    let back = parse_graph(&fs::read_to_string(&header)?, &fs::read_to_string(&edges)?)?;
    assert_eq!(back, g);
    println!("re-read graph is identical");
    Ok(())
}
