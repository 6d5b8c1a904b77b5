//! Independent oracles for integration tests: plain digit arithmetic and subset
//! enumeration, sharing no code with the library.

#![allow(dead_code)]

use fractalsep::fractal::{FractalParams, LevelGraph};

/// Membership straight from the definition: in every digit position, at most `m`
/// coordinates carry a digit from `A`.
pub fn naive_is_vertex(p: &FractalParams, k: u32, point: &[u64]) -> bool {
    let b = p.b();
    let mut rest = point.to_vec();
    for _ in 0..k {
        let mut hits = 0;
        for x in rest.iter_mut() {
            if p.digits().contains(&(*x % b)) {
                hits += 1;
            }
            *x /= b;
        }
        if hits > p.m() {
            return false;
        }
    }
    rest.iter().all(|&x| x == 0)
}

/// All points of `[0, side)^d` in lexicographic order.
pub fn ambient(d: usize, side: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; d];
    loop {
        out.push(cur.clone());
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < side {
                break;
            }
            cur[pos] = 0;
        }
    }
}

pub fn naive_vertices(p: &FractalParams, k: u32) -> Vec<Vec<u64>> {
    let side = p.b().pow(k);
    ambient(p.d(), side)
        .into_iter()
        .filter(|x| naive_is_vertex(p, k, x))
        .collect()
}

/// Every point of the line through `fixed` (coordinates other than `axis`) is a vertex.
pub fn naive_line_complete(p: &FractalParams, k: u32, axis: usize, fixed: &[u64]) -> bool {
    let side = p.b().pow(k);
    (0..side).all(|t| {
        let mut point = fixed.to_vec();
        point.insert(axis, t);
        naive_is_vertex(p, k, &point)
    })
}

pub fn l1(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum()
}

/// Neighbour bitmasks of a graph with at most 64 vertices.
pub fn neighbor_masks(g: &LevelGraph) -> Vec<u64> {
    assert!(g.n() <= 64);
    (0..g.n() as u32)
        .map(|v| g.adjacency().neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Largest connected component of the vertex set `alive`.
pub fn largest_component(masks: &[u64], mut alive: u64) -> u32 {
    let mut best = 0;
    while alive != 0 {
        let start = alive & alive.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = masks[v] & alive & !comp;
            comp |= new;
            frontier |= new;
        }
        best = best.max(comp.count_ones());
        alive &= !comp;
    }
    best
}

/// `cut^ε` by trying every vertex subset.
pub fn naive_cut(masks: &[u64], epsilon: f64) -> u32 {
    let n = masks.len();
    assert!(n <= 20);
    let limit = (epsilon * n as f64 + 1e-9).floor() as u32;
    let all: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut best = n as u32;
    for removed in 0..=all {
        let size = removed.count_ones();
        if size < best && largest_component(masks, all & !removed) <= limit {
            best = size;
        }
    }
    best
}
