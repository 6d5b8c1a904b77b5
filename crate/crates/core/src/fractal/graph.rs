use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_point, column_counts_ok, vertex_count_formula, FractalParams};
use crate::error::{Error, Result};

/// Default cap on materialized vertices.
pub const DEFAULT_MAX_VERTICES: usize = 2_000_000;

/// Limits applied before a graph is materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphBudget {
    pub max_vertices: usize,
}

impl Default for GraphBudget {
    fn default() -> Self {
        GraphBudget {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl GraphBudget {
    pub fn new(max_vertices: usize) -> Self {
        GraphBudget { max_vertices }
    }

    pub(crate) fn check(&self, what: &'static str, required: &BigUint) -> Result<()> {
        if *required > BigUint::from(self.max_vertices) {
            return Err(Error::budget(what, required, self.max_vertices));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<u64>);

impl LatticePoint {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for LatticePoint {
    fn from(v: Vec<u64>) -> Self {
        LatticePoint(v)
    }
}

/// Compressed adjacency lists over dense ids `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    /// Builds from per-vertex neighbor lists. Lists are sorted; symmetry is not checked.
    pub fn from_lists(lists: Vec<Vec<u32>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        Adjacency { offsets, targets }
    }

    /// Builds an undirected graph from an edge list. Rejects self-loops, duplicates and
    /// ids outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut lists = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Input(format!("edge ({u}, {v}) references a vertex >= {n}")));
            }
            if u == v {
                return Err(Error::Input(format!("self-loop at {u}")));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        let adj = Self::from_lists(lists);
        for v in 0..n as u32 {
            if adj.neighbors(v).windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(adj)
    }

    pub fn n(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n() as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n() as u32).all(|u| {
            self.neighbors(u)
                .iter()
                .all(|&v| v != u && self.neighbors(v).binary_search(&u).is_ok())
        })
    }
}

/// A finite subgraph of the level-`k` lattice, with vertices in lexicographic order.
///
/// Vertices are stored as linear keys `Σ x_i · side^(d−1−i)`, so sorting the keys
/// sorts the points lexicographically and the dense id of a point is its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGraph {
    params: FractalParams,
    level: u32,
    side: u64,
    strides: Vec<u64>,
    keys: Vec<u64>,
    adj: Adjacency,
}

impl LevelGraph {
    /// Induced subgraph of the lattice on `keys` (sorted, distinct).
    pub(crate) fn from_sorted_keys(params: FractalParams, level: u32, keys: Vec<u64>) -> Result<Self> {
        let (side, strides) = geometry(&params, level)?;
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let adj = lattice_adjacency(&keys, side, &strides);
        Ok(LevelGraph {
            params,
            level,
            side,
            strides,
            keys,
            adj,
        })
    }

    /// Induced subgraph on linear keys (see [`LevelGraph::keys`]). Keys must be strictly
    /// increasing vertices of `Γ_level`.
    pub fn from_keys(params: FractalParams, level: u32, keys: Vec<u64>) -> Result<Self> {
        let (side, strides) = geometry(&params, level)?;
        let ambient = strides[0] * side;
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("keys are not strictly increasing".into()));
        }
        let d = params.d();
        if let Some(&bad) = keys
            .iter()
            .find(|&&key| key >= ambient || !key_is_vertex(key, &params, level, d))
        {
            return Err(Error::Input(format!("key {bad} is not a vertex of level {level}")));
        }
        Self::from_sorted_keys(params, level, keys)
    }

    /// Graph on explicit points with an explicit edge list (used when re-reading exports).
    pub fn from_parts(
        params: FractalParams,
        level: u32,
        points: &[LatticePoint],
        edges: &[(u32, u32)],
    ) -> Result<Self> {
        let (side, strides) = geometry(&params, level)?;
        let mut keys = Vec::with_capacity(points.len());
        for p in points {
            check_point(p.coords(), &params, level)?;
            keys.push(encode(p.coords(), &strides));
        }
        if keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("vertices are not in strictly lexicographic order".into()));
        }
        let adj = Adjacency::from_edges(keys.len(), edges)?;
        let g = LevelGraph {
            params,
            level,
            side,
            strides,
            keys,
            adj,
        };
        g.check_invariants()?;
        Ok(g)
    }

    /// Induced subgraph on the given points, which must be vertices of `Γ_level`.
    /// Duplicates are merged.
    pub fn from_points(params: FractalParams, level: u32, points: &[LatticePoint]) -> Result<Self> {
        let (_, strides) = geometry(&params, level)?;
        let mut keys = Vec::with_capacity(points.len());
        for p in points {
            check_point(p.coords(), &params, level)?;
            if !column_counts_ok(p.coords(), &params, level, params.m()) {
                return Err(Error::Input(format!("{:?} is not a vertex of level {level}", p.coords())));
            }
            keys.push(encode(p.coords(), &strides));
        }
        keys.sort_unstable();
        keys.dedup();
        Self::from_sorted_keys(params, level, keys)
    }

    /// Induced subgraph on a set of vertex ids of `self`.
    pub fn induced(&self, ids: &[u32]) -> LevelGraph {
        let mut keys: Vec<u64> = ids.iter().map(|&i| self.keys[i as usize]).collect();
        keys.sort_unstable();
        keys.dedup();
        Self::from_sorted_keys(self.params.clone(), self.level, keys)
            .expect("geometry of an existing graph is valid")
    }

    pub fn params(&self) -> &FractalParams {
        &self.params
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> u64 {
        self.side
    }

    pub fn n(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }

    /// Linear keys `Σ x_i · side^(d−1−i)` of the vertices, in id order.
    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    #[inline]
    pub fn coord(&self, id: u32, axis: usize) -> u64 {
        (self.keys[id as usize] / self.strides[axis]) % self.side
    }

    pub fn point(&self, id: u32) -> LatticePoint {
        LatticePoint((0..self.params.d()).map(|a| self.coord(id, a)).collect())
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        (0..self.n() as u32).map(|i| self.point(i)).collect()
    }

    pub fn id_of(&self, coords: &[u64]) -> Option<u32> {
        if coords.len() != self.params.d() || coords.iter().any(|&x| x >= self.side) {
            return None;
        }
        let key = encode(coords, &self.strides);
        self.keys.binary_search(&key).ok().map(|i| i as u32)
    }

    pub fn contains(&self, coords: &[u64]) -> bool {
        self.id_of(coords).is_some()
    }

    /// Verifies the representation invariants: strictly sorted vertices, membership in
    /// `V_k`, symmetric loop-free adjacency and unit L1 length of every edge.
    pub fn check_invariants(&self) -> Result<()> {
        if self.keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Consistency("vertex order is not strictly lexicographic".into()));
        }
        let d = self.params.d();
        let mut buf = vec![0u64; d];
        for id in 0..self.n() as u32 {
            for (a, x) in buf.iter_mut().enumerate() {
                *x = self.coord(id, a);
            }
            if !column_counts_ok(&buf, &self.params, self.level, self.params.m()) {
                return Err(Error::Consistency(format!("{:?} is not a vertex of level {}", buf, self.level)));
            }
        }
        if !self.adj.is_symmetric() {
            return Err(Error::Consistency("adjacency is not symmetric or has a self-loop".into()));
        }
        for (u, v) in self.adj.edges() {
            let dist: u64 = (0..d).map(|a| self.coord(u, a).abs_diff(self.coord(v, a))).sum();
            if dist != 1 {
                return Err(Error::Consistency(format!("edge ({u}, {v}) has L1 length {dist}")));
            }
        }
        Ok(())
    }
}

fn geometry(params: &FractalParams, level: u32) -> Result<(u64, Vec<u64>)> {
    let side = params.side(level)?;
    let d = params.d();
    let mut strides = vec![1u64; d];
    for a in (0..d - 1).rev() {
        strides[a] = strides[a + 1]
            .checked_mul(side)
            .ok_or_else(|| Error::budget("ambient lattice size", format!("{side}^{d}"), u64::MAX))?;
    }
    strides[0]
        .checked_mul(side)
        .ok_or_else(|| Error::budget("ambient lattice size", format!("{side}^{d}"), u64::MAX))?;
    Ok((side, strides))
}

#[inline]
fn encode(coords: &[u64], strides: &[u64]) -> u64 {
    coords.iter().zip(strides).map(|(x, s)| x * s).sum()
}

/// Unit-step neighbors found by binary search over the sorted keys. Slots are laid out so
/// that each list comes out already sorted: minus-steps from the largest stride down,
/// then plus-steps from the smallest stride up.
fn lattice_adjacency(keys: &[u64], side: u64, strides: &[u64]) -> Adjacency {
    let d = strides.len();
    let width = 2 * d;
    let mut slots = vec![u32::MAX; keys.len() * width];
    slots
        .par_chunks_mut(width)
        .enumerate()
        .for_each(|(id, slot)| {
            let key = keys[id];
            for (a, &stride) in strides.iter().enumerate() {
                let x = (key / stride) % side;
                if x > 0 {
                    slot[a] = lookup(keys, key - stride, id, true);
                }
                if x + 1 < side {
                    slot[width - 1 - a] = lookup(keys, key + stride, id, false);
                }
            }
        });
    let mut offsets = Vec::with_capacity(keys.len() + 1);
    let mut targets = Vec::with_capacity(keys.len() * 2);
    offsets.push(0);
    for chunk in slots.chunks(width) {
        targets.extend(chunk.iter().copied().filter(|&t| t != u32::MAX));
        offsets.push(targets.len());
    }
    Adjacency { offsets, targets }
}

#[inline]
fn lookup(keys: &[u64], key: u64, from: usize, below: bool) -> u32 {
    let found = if below {
        keys[..from].binary_search(&key)
    } else {
        keys[from + 1..].binary_search(&key).map(|i| i + from + 1)
    };
    found.map_or(u32::MAX, |i| i as u32)
}

/// Materializes `Γ_k`: every point of `[0, b^k)^d` passing the column test, with unit-step
/// edges.
pub fn build_level_graph(params: &FractalParams, k: u32, budget: GraphBudget) -> Result<LevelGraph> {
    budget.check("level graph vertices", &vertex_count_formula(params, k))?;
    let (side, strides) = geometry(params, k)?;
    let ambient = strides[0] * side;
    let d = params.d();
    let keys: Vec<u64> = (0..ambient)
        .into_par_iter()
        .filter(|&key| key_is_vertex(key, params, k, d))
        .collect();
    LevelGraph::from_sorted_keys(params.clone(), k, keys)
}

/// Column test straight from the linear key: its base-`b` digits are the coordinates'
/// digits laid out coordinate by coordinate.
#[inline]
fn key_is_vertex(mut key: u64, params: &FractalParams, k: u32, d: usize) -> bool {
    let b = params.b();
    let mut counts = [0u16; 64];
    for _ in 0..d {
        for count in counts.iter_mut().take(k as usize) {
            if params.is_a_digit(key % b) {
                *count += 1;
            }
            key /= b;
        }
    }
    counts[..k as usize].iter().all(|&c| c as usize <= params.m())
}
