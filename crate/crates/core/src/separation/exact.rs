//! Exact `cut^ε` by branch and bound with iterative deepening on the cut size.
//!
//! At every node some component `C` of `G − S` is too large. Any valid extension of `S`
//! must remove a vertex of `C`, so we branch on the vertices `v_1, v_2, …` of `C`: the
//! `i`-th child removes `v_i` and forbids `v_1 … v_{i−1}` for the rest of the subtree.
//! Every valid cutset containing `S` and avoiding the forbidden set is reached exactly
//! once, so exhausting a size level yields all optimal cutsets and the lexicographically
//! smallest one is returned.

use std::time::{Duration, Instant};

use super::{check_epsilon, component_sizes_masked, max_component, CutResult};
use crate::error::Result;
use crate::fractal::{Adjacency, LevelGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 20_000_000,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactOutcome {
    /// Best cutset found, sorted.
    pub cut: Vec<u32>,
    pub proved_optimal: bool,
    /// Every size below this value was refuted exhaustively.
    pub lower_bound: usize,
    pub nodes: u64,
}

/// Minimum `cut^ε` of `g`, reported with coordinates.
///
/// `initial` seeds the incumbent (for example with a constructive cut); invalid seeds
/// are ignored.
pub fn cut_epsilon_exact(
    g: &LevelGraph,
    epsilon: f64,
    budget: SearchBudget,
    initial: Option<&[u32]>,
) -> Result<CutResult> {
    let outcome = exact_min_cut(g.adjacency(), epsilon, budget, initial)?;
    let mut result = CutResult::evaluate(g, &outcome.cut, epsilon)?;
    result.proved_optimal = outcome.proved_optimal;
    result.lower_bound = outcome.lower_bound;
    Ok(result)
}

pub fn exact_min_cut(
    adj: &Adjacency,
    epsilon: f64,
    budget: SearchBudget,
    initial: Option<&[u32]>,
) -> Result<ExactOutcome> {
    check_epsilon(epsilon)?;
    let n = adj.n();
    let limit = max_component(n, epsilon);
    let mut search = Search::new(adj, limit, budget);

    let mut incumbent = greedy_cut(adj, epsilon)?;
    if let Some(seed) = initial {
        let mut seed = seed.to_vec();
        seed.sort_unstable();
        seed.dedup();
        if seed.iter().all(|&v| (v as usize) < n) && seed.len() < incumbent.len() && search.is_valid(&seed) {
            incumbent = seed;
        }
    }

    let mut size = search.root_lower_bound();
    while size <= incumbent.len() {
        match search.level(size) {
            LevelResult::Found(cut) => {
                return Ok(ExactOutcome {
                    cut,
                    proved_optimal: true,
                    lower_bound: size,
                    nodes: search.nodes,
                });
            }
            LevelResult::Refuted => size += 1,
            LevelResult::Aborted(found) => {
                let cut = match found {
                    Some(c) if c.len() <= incumbent.len() => c,
                    _ => incumbent,
                };
                return Ok(ExactOutcome {
                    cut,
                    proved_optimal: false,
                    lower_bound: size,
                    nodes: search.nodes,
                });
            }
        }
    }
    // The incumbent's own size level is always feasible, so the loop returns above.
    unreachable!("search exhausted all sizes up to a feasible incumbent")
}

/// Greedy incumbent: repeatedly delete the vertex of the largest component whose removal
/// leaves the smallest largest component. Large components fall back to the
/// highest-degree vertex to keep the cost near linear.
pub fn greedy_cut(adj: &Adjacency, epsilon: f64) -> Result<Vec<u32>> {
    check_epsilon(epsilon)?;
    let n = adj.n();
    let limit = max_component(n, epsilon);
    let mut removed = vec![false; n];
    let mut cut = Vec::new();
    loop {
        let (members, size) = largest_component(adj, &removed);
        if size <= limit {
            break;
        }
        let pick = if size <= 256 {
            *members
                .iter()
                .min_by_key(|&&v| {
                    removed[v as usize] = true;
                    let worst = component_sizes_masked(adj, &removed).first().copied().unwrap_or(0);
                    removed[v as usize] = false;
                    (worst, v)
                })
                .expect("oversized component is non-empty")
        } else {
            *members
                .iter()
                .max_by_key(|&&v| (adj.neighbors(v).iter().filter(|&&w| !removed[w as usize]).count(), std::cmp::Reverse(v)))
                .expect("oversized component is non-empty")
        };
        removed[pick as usize] = true;
        cut.push(pick);
    }
    cut.sort_unstable();
    Ok(cut)
}

fn largest_component(adj: &Adjacency, removed: &[bool]) -> (Vec<u32>, usize) {
    let mut seen = removed.to_vec();
    let mut best: Vec<u32> = Vec::new();
    let mut stack = Vec::new();
    for s in 0..adj.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s as u32);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in adj.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    let size = best.len();
    (best, size)
}

enum LevelResult {
    Found(Vec<u32>),
    Refuted,
    Aborted(Option<Vec<u32>>),
}

struct Search<'a> {
    adj: &'a Adjacency,
    limit: usize,
    max_degree: usize,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    removed: Vec<bool>,
    forbidden: Vec<bool>,
    chosen: Vec<u32>,
    best: Option<Vec<u32>>,
    aborted: bool,
    // scratch
    comp_of: Vec<u32>,
    stack: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn new(adj: &'a Adjacency, limit: usize, budget: SearchBudget) -> Self {
        let n = adj.n();
        Search {
            adj,
            limit,
            max_degree: adj.max_degree(),
            budget,
            started: Instant::now(),
            nodes: 0,
            removed: vec![false; n],
            forbidden: vec![false; n],
            chosen: Vec::new(),
            best: None,
            aborted: false,
            comp_of: vec![NONE; n],
            stack: Vec::new(),
        }
    }

    fn is_valid(&self, cut: &[u32]) -> bool {
        let mut mask = vec![false; self.adj.n()];
        for &v in cut {
            mask[v as usize] = true;
        }
        component_sizes_masked(self.adj, &mask).first().copied().unwrap_or(0) <= self.limit
    }

    /// Vertices needed to break a connected piece of `size` into parts of at most
    /// `limit`: `r` deletions leave at most `1 + r(Δ − 1)` parts.
    fn piece_bound(&self, size: usize) -> usize {
        if size <= self.limit {
            return 0;
        }
        let excess = size - self.limit;
        let per = 1 + self.limit * self.max_degree.saturating_sub(1);
        excess.div_ceil(per).max(1)
    }

    fn root_lower_bound(&mut self) -> usize {
        let sizes = component_sizes_masked(self.adj, &self.removed);
        sizes.iter().map(|&s| self.piece_bound(s)).sum()
    }

    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.node_limit {
            return true;
        }
        if let Some(t) = self.budget.time_limit {
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() >= t {
                return true;
            }
        }
        false
    }

    fn level(&mut self, size: usize) -> LevelResult {
        self.best = None;
        self.aborted = false;
        self.dfs(size);
        let best = self.best.take();
        if self.aborted {
            LevelResult::Aborted(best)
        } else {
            match best {
                Some(cut) => LevelResult::Found(cut),
                None => LevelResult::Refuted,
            }
        }
    }

    /// Labels components of `G − removed`; returns `(label, size)` for oversized ones.
    fn label_components(&mut self) -> Vec<(u32, usize)> {
        let n = self.adj.n();
        self.comp_of.iter_mut().for_each(|c| *c = NONE);
        let mut oversized = Vec::new();
        let mut label = 0u32;
        for s in 0..n {
            if self.removed[s] || self.comp_of[s] != NONE {
                continue;
            }
            self.comp_of[s] = label;
            self.stack.push(s as u32);
            let mut size = 0;
            while let Some(u) = self.stack.pop() {
                size += 1;
                for &w in self.adj.neighbors(u) {
                    let w = w as usize;
                    if !self.removed[w] && self.comp_of[w] == NONE {
                        self.comp_of[w] = label;
                        self.stack.push(w as u32);
                    }
                }
            }
            if size > self.limit {
                oversized.push((label, size));
            }
            label += 1;
        }
        oversized
    }

    /// A connected block of forbidden vertices larger than the limit can never be split.
    fn forbidden_block_too_large(&mut self) -> bool {
        let n = self.adj.n();
        let mut seen = vec![false; n];
        for s in 0..n {
            if !self.forbidden[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            self.stack.push(s as u32);
            let mut size = 0;
            while let Some(u) = self.stack.pop() {
                size += 1;
                for &w in self.adj.neighbors(u) {
                    let w = w as usize;
                    if self.forbidden[w] && !seen[w] {
                        seen[w] = true;
                        self.stack.push(w as u32);
                    }
                }
            }
            if size > self.limit {
                self.stack.clear();
                return true;
            }
        }
        false
    }

    fn dfs(&mut self, size: usize) {
        if self.aborted {
            return;
        }
        if self.out_of_budget() {
            self.aborted = true;
            return;
        }
        self.nodes += 1;

        let oversized = self.label_components();
        if oversized.is_empty() {
            let mut cut = self.chosen.clone();
            cut.sort_unstable();
            if self.best.as_ref().is_none_or(|b| cut < *b) {
                self.best = Some(cut);
            }
            return;
        }
        let remaining = size - self.chosen.len();
        let needed: usize = oversized.iter().map(|&(_, s)| self.piece_bound(s)).sum();
        if needed > remaining || self.forbidden_block_too_large() {
            return;
        }

        // Branch on the oversized component with the fewest free vertices.
        let mut branch: Option<Vec<u32>> = None;
        for &(label, _) in &oversized {
            let free: Vec<u32> = (0..self.adj.n() as u32)
                .filter(|&v| self.comp_of[v as usize] == label && !self.forbidden[v as usize])
                .collect();
            if free.is_empty() {
                return;
            }
            if branch.as_ref().is_none_or(|b| free.len() < b.len()) {
                branch = Some(free);
            }
        }
        let mut candidates = branch.expect("at least one oversized component");
        let adj = self.adj;
        candidates.sort_by_key(|&v| (std::cmp::Reverse(adj.degree(v)), v));

        let mut newly_forbidden = Vec::with_capacity(candidates.len());
        for &v in &candidates {
            self.removed[v as usize] = true;
            self.chosen.push(v);
            self.dfs(size);
            self.chosen.pop();
            self.removed[v as usize] = false;
            if self.aborted {
                break;
            }
            self.forbidden[v as usize] = true;
            newly_forbidden.push(v);
        }
        for v in newly_forbidden {
            self.forbidden[v as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::{build_level_graph, FractalParams, GraphBudget};

    #[test]
    fn eight_cycle_needs_two() {
        let g = build_level_graph(&FractalParams::carpet(), 1, GraphBudget::default()).unwrap();
        let r = cut_epsilon_exact(&g, 0.5, SearchBudget::default(), None).unwrap();
        assert_eq!(r.cut_size(), 2);
        assert!(r.valid && r.proved_optimal);
        // Lexicographically first optimal pair: (0,0) and (1,2), leaving paths of 2 and 4.
        assert_eq!(r.cut_ids, vec![0, 4]);
    }

    #[test]
    fn single_vertex_must_be_deleted() {
        let g = build_level_graph(&FractalParams::carpet(), 0, GraphBudget::default()).unwrap();
        for eps in [0.25, 0.5, 0.9] {
            let r = cut_epsilon_exact(&g, eps, SearchBudget::default(), None).unwrap();
            assert_eq!(r.cut_size(), 1);
            assert!(r.valid);
        }
    }

    #[test]
    fn empty_graph_needs_nothing() {
        let adj = Adjacency::from_lists(Vec::new());
        let out = exact_min_cut(&adj, 0.5, SearchBudget::default(), None).unwrap();
        assert!(out.cut.is_empty() && out.proved_optimal);
    }

    #[test]
    fn node_limit_returns_incumbent() {
        let g = build_level_graph(&FractalParams::carpet(), 2, GraphBudget::default()).unwrap();
        let budget = SearchBudget {
            node_limit: 10,
            time_limit: None,
        };
        let r = cut_epsilon_exact(&g, 0.5, budget, None).unwrap();
        assert!(r.valid);
        assert!(!r.proved_optimal);
        assert!(r.lower_bound <= r.cut_size());
    }

    #[test]
    fn path_graph() {
        // P_7 with eps = 1/2: removing the middle vertex leaves two triples.
        let edges: Vec<(u32, u32)> = (0..6).map(|i| (i, i + 1)).collect();
        let adj = Adjacency::from_edges(7, &edges).unwrap();
        let out = exact_min_cut(&adj, 0.5, SearchBudget::default(), None).unwrap();
        assert_eq!(out.cut, vec![3]);
        let out = exact_min_cut(&adj, 0.25, SearchBudget::default(), None).unwrap();
        // Parts of size at most 1 need every other vertex: {1, 3, 5}.
        assert_eq!(out.cut, vec![1, 3, 5]);
    }
}
