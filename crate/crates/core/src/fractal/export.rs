//! Plain-text graph export and SVG rendering of 2-D levels.
//!
//! A graph is written as two documents: a JSON header with the parameters, the level
//! and the vertex coordinate table in canonical order, and an edge list with one
//! `u v` pair (`u < v`, canonical ids) per line.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::graph::{LatticePoint, LevelGraph};
use super::FractalParams;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphHeader {
    pub params: FractalParams,
    pub k: u32,
    pub n: usize,
    pub edges: usize,
    pub vertices: Vec<LatticePoint>,
}

impl GraphHeader {
    pub fn of(g: &LevelGraph) -> Self {
        GraphHeader {
            params: g.params().clone(),
            k: g.level(),
            n: g.n(),
            edges: g.edge_count(),
            vertices: g.points(),
        }
    }
}

pub fn write_header(g: &LevelGraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GraphHeader::of(g))?)
}

pub fn write_edge_list(g: &LevelGraph) -> String {
    let mut out = String::with_capacity(g.edge_count() * 12);
    for (u, v) in g.adjacency().edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Re-reads a header and edge list written by [`write_header`] / [`write_edge_list`].
pub fn parse_graph(header: &str, edge_list: &str) -> Result<LevelGraph> {
    let header: GraphHeader = serde_json::from_str(header)?;
    if header.vertices.len() != header.n {
        return Err(Error::Input(format!(
            "header declares n = {} but lists {} vertices",
            header.n,
            header.vertices.len()
        )));
    }
    let mut edges = Vec::with_capacity(header.edges);
    for (lineno, line) in edge_list.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<u32> {
            parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Input(format!("edge list line {}: expected two ids", lineno + 1)))
        };
        let (u, v) = (next()?, next()?);
        edges.push((u, v));
    }
    if edges.len() != header.edges {
        return Err(Error::Input(format!(
            "header declares {} edges but the list has {}",
            header.edges,
            edges.len()
        )));
    }
    LevelGraph::from_parts(header.params, header.k, &header.vertices, &edges)
}

const CELL_PX: u64 = 12;

/// One unit square per vertex, origin at the bottom-left. Vertices of `highlight` (a
/// subgraph on the same lattice, typically `C_k`) get a second fill.
pub fn render_svg(g: &LevelGraph, highlight: Option<&LevelGraph>) -> Result<String> {
    if g.params().d() != 2 {
        return Err(Error::Unsupported(format!(
            "SVG rendering needs d = 2, got d = {}",
            g.params().d()
        )));
    }
    if let Some(h) = highlight {
        if h.params() != g.params() || h.level() != g.level() {
            return Err(Error::Input("highlight graph lives on a different lattice".into()));
        }
    }
    let side = g.side();
    let px = side * CELL_PX;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px}" height="{px}" viewBox="0 0 {side} {side}" shape-rendering="crispEdges">"#
    );
    let _ = writeln!(out, "<title>{} level {}</title>", g.params(), g.level());
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{side}" height="{side}" fill="#ffffff"/>"##);
    for id in 0..g.n() as u32 {
        let (x, y) = (g.coord(id, 0), g.coord(id, 1));
        let lit = highlight.is_some_and(|h| h.contains(&[x, y]));
        let (class, fill) = if lit {
            ("cell complete", "#c0392b")
        } else {
            ("cell", "#1b1b1b")
        };
        let _ = writeln!(
            out,
            r#"<rect class="{class}" x="{x}" y="{}" width="1" height="1" fill="{fill}"/>"#,
            side - 1 - y
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
