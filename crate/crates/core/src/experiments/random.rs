use rand::Rng;

use crate::error::{Error, Result};
use crate::fractal::Adjacency;
use crate::separation::{components, max_component};

/// Grows a connected vertex set of `size` from a uniform start vertex, adding a uniform
/// frontier vertex each step. Stops early if the start's component is smaller.
pub fn random_connected_subset<R: Rng + ?Sized>(adj: &Adjacency, size: usize, rng: &mut R) -> Vec<u32> {
    if adj.n() == 0 || size == 0 {
        return Vec::new();
    }
    let mut inside = vec![false; adj.n()];
    let start = rng.gen_range(0..adj.n() as u32);
    inside[start as usize] = true;
    let mut chosen = vec![start];
    let mut frontier: Vec<u32> = Vec::new();
    let mut in_frontier = vec![false; adj.n()];
    let mut grow = |v: u32, frontier: &mut Vec<u32>, inside: &[bool]| {
        for &w in adj.neighbors(v) {
            if !inside[w as usize] && !in_frontier[w as usize] {
                in_frontier[w as usize] = true;
                frontier.push(w);
            }
        }
    };
    grow(start, &mut frontier, &inside);
    while chosen.len() < size && !frontier.is_empty() {
        let i = rng.gen_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        inside[v as usize] = true;
        chosen.push(v);
        grow(v, &mut frontier, &inside);
    }
    chosen.sort_unstable();
    chosen
}

/// Exhaustive `cut^ε` over all vertex subsets, smallest first. Only for tiny graphs.
pub fn brute_force_cut(adj: &Adjacency, epsilon: f64) -> Result<usize> {
    let n = adj.n();
    if n > 24 {
        return Err(Error::budget("subset enumeration vertices", n, 24));
    }
    let limit = max_component(n, epsilon);
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let removed: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
        if components(adj, &removed).first().copied().unwrap_or(0) <= limit {
            return Ok(removed.len());
        }
    }
    Ok(n)
}
