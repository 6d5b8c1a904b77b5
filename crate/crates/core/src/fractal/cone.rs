use num_bigint::BigUint;

use super::graph::{build_level_graph, Adjacency, GraphBudget, LevelGraph};
use super::{vertex_count_formula, FractalParams};
use crate::error::Result;

/// Layered graph over `Γ_0, …, Γ_{k_max}`.
///
/// A level-`k` vertex `w` is joined to the level-`(k−1)` vertex `v` when every coordinate
/// of `v` equals the low `k − 1` digits of the matching coordinate of `w`. Each `w`
/// therefore has at most one parent, `w mod b^{k−1}`.
#[derive(Clone, Debug)]
pub struct ConeGraph {
    levels: Vec<LevelGraph>,
    /// `cross_edges[k]` joins level `k − 1` (first id) to level `k` (second id); entry 0 is empty.
    cross_edges: Vec<Vec<(u32, u32)>>,
}

impl ConeGraph {
    pub fn levels(&self) -> &[LevelGraph] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &LevelGraph {
        &self.levels[k]
    }

    pub fn cross_edges(&self, k: usize) -> &[(u32, u32)] {
        &self.cross_edges[k]
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(LevelGraph::n).sum()
    }

    /// Global id of `(level, id)` in the disjoint union, levels in increasing order.
    pub fn global_id(&self, level: usize, id: u32) -> u32 {
        let before: usize = self.levels[..level].iter().map(LevelGraph::n).sum();
        (before + id as usize) as u32
    }

    /// Intra-level and cross edges together over global ids.
    pub fn adjacency(&self) -> Adjacency {
        let mut offsets = Vec::with_capacity(self.levels.len());
        let mut acc = 0usize;
        for g in &self.levels {
            offsets.push(acc);
            acc += g.n();
        }
        let mut lists = vec![Vec::new(); acc];
        for (k, g) in self.levels.iter().enumerate() {
            let base = offsets[k];
            for (u, v) in g.adjacency().edges() {
                lists[base + u as usize].push((base + v as usize) as u32);
                lists[base + v as usize].push((base + u as usize) as u32);
            }
            if k > 0 {
                let parent_base = offsets[k - 1];
                for &(p, c) in &self.cross_edges[k] {
                    lists[parent_base + p as usize].push((base + c as usize) as u32);
                    lists[base + c as usize].push((parent_base + p as usize) as u32);
                }
            }
        }
        Adjacency::from_lists(lists)
    }
}

pub fn build_cone(params: &FractalParams, k_max: u32, budget: GraphBudget) -> Result<ConeGraph> {
    let total: BigUint = (0..=k_max).map(|k| vertex_count_formula(params, k)).sum();
    budget.check("cone vertices", &total)?;
    let levels = (0..=k_max)
        .map(|k| build_level_graph(params, k, budget))
        .collect::<Result<Vec<_>>>()?;
    let d = params.d();
    let mut cross_edges = vec![Vec::new()];
    for k in 1..=k_max as usize {
        let modulus = params.side(k as u32 - 1)?;
        let (parent, child) = (&levels[k - 1], &levels[k]);
        let mut edges = Vec::new();
        let mut buf = vec![0u64; d];
        for w in 0..child.n() as u32 {
            for (a, x) in buf.iter_mut().enumerate() {
                *x = child.coord(w, a) % modulus;
            }
            if let Some(v) = parent.id_of(&buf) {
                edges.push((v, w));
            }
        }
        edges.sort_unstable();
        cross_edges.push(edges);
    }
    Ok(ConeGraph {
        levels,
        cross_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::digit;

    #[test]
    fn root_joins_every_level_one_vertex() {
        let cone = build_cone(&FractalParams::carpet(), 1, GraphBudget::default()).unwrap();
        assert_eq!(cone.cross_edges(1).len(), 8);
        assert!(cone.cross_edges(1).iter().all(|&(p, _)| p == 0));
    }

    #[test]
    fn cross_edges_match_pairwise_digit_rule() {
        // Oracle: test every (v, w) pair against the digit agreement rule directly.
        let params = FractalParams::carpet();
        let cone = build_cone(&params, 3, GraphBudget::default()).unwrap();
        for k in 1..=3usize {
            let (pg, cg) = (cone.level(k - 1), cone.level(k));
            let mut expected = Vec::new();
            for v in 0..pg.n() as u32 {
                for w in 0..cg.n() as u32 {
                    let agree = (0..2).all(|a| {
                        (0..k as u32 - 1).all(|i| {
                            digit(pg.coord(v, a), i, 3) == digit(cg.coord(w, a), i, 3)
                        })
                    });
                    if agree {
                        expected.push((v, w));
                    }
                }
            }
            assert_eq!(cone.cross_edges(k), expected.as_slice());
        }
    }

    #[test]
    fn origin_children_at_level_two() {
        let cone = build_cone(&FractalParams::carpet(), 2, GraphBudget::default()).unwrap();
        let origin = cone.level(1).id_of(&[0, 0]).unwrap();
        let children: Vec<_> = cone
            .cross_edges(2)
            .iter()
            .filter(|&&(p, _)| p == origin)
            .map(|&(_, c)| cone.level(2).point(c).0)
            .collect();
        // x', y' in {0, 3, 6}, minus (3, 3) whose digit-1 column is all ones.
        assert_eq!(children.len(), 8);
        assert!(children.iter().all(|c| c[0] % 3 == 0 && c[1] % 3 == 0));
        assert!(!children.contains(&vec![3, 3]));
    }

    #[test]
    fn union_adjacency_is_symmetric() {
        let cone = build_cone(&FractalParams::menger(), 2, GraphBudget::default()).unwrap();
        let adj = cone.adjacency();
        assert_eq!(adj.n(), 1 + 20 + 400);
        assert!(adj.is_symmetric());
        let cross: usize = (1..=2).map(|k| cone.cross_edges(k).len()).sum();
        let intra: usize = cone.levels().iter().map(LevelGraph::edge_count).sum();
        assert_eq!(adj.edge_count(), cross + intra);
        assert_eq!(cone.global_id(2, 0), 21);
    }
}
