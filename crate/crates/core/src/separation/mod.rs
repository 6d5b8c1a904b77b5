//! Balanced vertex separators: `cut^ε(G) = min{|S| : |L(G − S)| ≤ ε|G|}` where `L` is
//! the largest connected component.
//!
//! Three routes are provided: an exact branch and bound for small graphs, the
//! recursive sparse-plane cutter for upper bounds, and path-congestion certificates
//! for lower bounds.

mod constructive;
mod exact;
mod paths;
mod union_find;

pub use constructive::{
    constructive_cut, cutter_constant, sparse_plane_candidates, ConstructiveCut, CutterBound,
};
pub use exact::{cut_epsilon_exact, exact_min_cut, greedy_cut, ExactOutcome, SearchBudget};
pub use paths::{
    direct_line_lower_bound, path_lower_bound, CanonicalPaths, PathBound, PathSummary, PathSystem,
    Router, DEFAULT_MAX_PAIRS,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractal::{Adjacency, LatticePoint, LevelGraph};

/// Largest component size allowed by the balance parameter: `⌊ε·n⌋`.
pub fn max_component(n: usize, epsilon: f64) -> usize {
    (epsilon * n as f64 + 1e-9).floor() as usize
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Input(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    Ok(())
}

/// Component sizes of `G − removed`, largest first.
pub fn components(adj: &Adjacency, removed: &[u32]) -> Vec<usize> {
    let mut mask = vec![false; adj.n()];
    for &v in removed {
        mask[v as usize] = true;
    }
    component_sizes_masked(adj, &mask)
}

pub(crate) fn component_sizes_masked(adj: &Adjacency, removed: &[bool]) -> Vec<usize> {
    let n = adj.n();
    let mut seen = removed.to_vec();
    let mut stack = Vec::new();
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s as u32);
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in adj.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// A cutset together with the census of what remains.
#[derive(Clone, Debug, PartialEq)]
pub struct CutResult {
    pub epsilon: f64,
    pub n: usize,
    /// Cut vertex ids, sorted. Ids follow the lexicographic vertex order.
    pub cut_ids: Vec<u32>,
    /// The same vertices as coordinate tuples, sorted.
    pub cutset: Vec<LatticePoint>,
    /// Residual component sizes, largest first.
    pub component_sizes: Vec<usize>,
    pub valid: bool,
    pub proved_optimal: bool,
    /// Proven lower bound on `cut^ε` established by the producer (0 when none).
    pub lower_bound: usize,
}

impl CutResult {
    /// Evaluates `ids` as a cutset of `g`.
    pub fn evaluate(g: &LevelGraph, ids: &[u32], epsilon: f64) -> Result<Self> {
        check_epsilon(epsilon)?;
        let mut cut_ids = ids.to_vec();
        cut_ids.sort_unstable();
        cut_ids.dedup();
        if let Some(&bad) = cut_ids.iter().find(|&&v| v as usize >= g.n()) {
            return Err(Error::Input(format!("cut vertex {bad} is not in the graph")));
        }
        let component_sizes = components(g.adjacency(), &cut_ids);
        let largest = component_sizes.first().copied().unwrap_or(0);
        Ok(CutResult {
            epsilon,
            n: g.n(),
            cutset: cut_ids.iter().map(|&v| g.point(v)).collect(),
            valid: largest <= max_component(g.n(), epsilon),
            cut_ids,
            component_sizes,
            proved_optimal: false,
            lower_bound: 0,
        })
    }

    pub fn cut_size(&self) -> usize {
        self.cut_ids.len()
    }

    pub fn largest_component(&self) -> usize {
        self.component_sizes.first().copied().unwrap_or(0)
    }

    pub fn summary(&self) -> CutSummary {
        CutSummary {
            epsilon: self.epsilon,
            cut_size: self.cut_size(),
            cutset: self.cutset.clone(),
            largest_component: self.largest_component(),
            proved_optimal: self.proved_optimal,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.summary())?)
    }
}

/// Serialized form of a [`CutResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutSummary {
    pub epsilon: f64,
    pub cut_size: usize,
    pub cutset: Vec<LatticePoint>,
    pub largest_component: usize,
    pub proved_optimal: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::{build_level_graph, FractalParams, GraphBudget};

    fn cycle8() -> LevelGraph {
        build_level_graph(&FractalParams::carpet(), 1, GraphBudget::default()).unwrap()
    }

    #[test]
    fn census_on_the_eight_cycle() {
        let g = cycle8();
        assert_eq!(components(g.adjacency(), &[]), vec![8]);
        // (0,0) and (2,2) sit opposite each other on the cycle.
        let a = g.id_of(&[0, 0]).unwrap();
        let b = g.id_of(&[2, 2]).unwrap();
        assert_eq!(components(g.adjacency(), &[a, b]), vec![3, 3]);
        let all: Vec<u32> = (0..8).collect();
        assert!(components(g.adjacency(), &all).is_empty());
    }

    #[test]
    fn evaluate_and_serialize() {
        let g = cycle8();
        let a = g.id_of(&[0, 0]).unwrap();
        let b = g.id_of(&[2, 2]).unwrap();
        let r = CutResult::evaluate(&g, &[b, a], 0.5).unwrap();
        assert!(r.valid);
        assert_eq!(r.cutset, vec![LatticePoint(vec![0, 0]), LatticePoint(vec![2, 2])]);
        assert_eq!(r.component_sizes.iter().sum::<usize>() + r.cut_size(), 8);
        let json = r.to_json().unwrap();
        let back: CutSummary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r.summary());
        assert!(json.contains("\"largest_component\": 3"));

        let r = CutResult::evaluate(&g, &[a], 0.5).unwrap();
        assert!(!r.valid);
        assert!(CutResult::evaluate(&g, &[a], 1.0).is_err());
        assert!(CutResult::evaluate(&g, &[99], 0.5).is_err());
    }

    #[test]
    fn threshold_is_floor() {
        assert_eq!(max_component(8, 0.5), 4);
        assert_eq!(max_component(9, 0.5), 4);
        assert_eq!(max_component(9, 0.75), 6);
        assert_eq!(max_component(1, 0.25), 0);
    }
}
