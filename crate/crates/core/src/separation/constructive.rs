//! Upper bounds by cutting with axis-perpendicular planes.
//!
//! Phase 1 only runs when the graph is spread over more than a cube of side `b^k`,
//! where `k = ⌊log_{bN} n⌋`. Around the per-axis median it removes, on each side, the
//! first plane within distance `b^k/2` that meets at most the pigeonhole share of
//! vertices; only the middle cell can still be too large, and it fits in a cube of
//! side `b^k`.
//!
//! Phase 2 repeats on the middle cell. Inside a box of side at most `b^{j+1}` it takes,
//! per axis, the largest offset `p ≤ median` whose low `j` digits all lie in `A`, plus
//! its partner `p + b^j`. Such planes are sparse: a point on them has an `A` digit in
//! each of the low `j` columns, so the other coordinates are confined to `N` column
//! patterns per digit, at most `b^{d−1} N^j` points in the box. The middle cell shrinks
//! below side `b^j` and the loop stops once it holds at most `n/2` vertices.
//!
//! Finally, plane vertices whose return does not create an oversized component are put
//! back, in increasing id order.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::union_find::UnionFind;
use super::{max_component, CutResult};
use crate::error::{Error, Result};
use crate::fractal::{FractalParams, LevelGraph};

/// The a-priori size envelope of the cutter for a graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutterBound {
    /// `⌊log_{bN} n⌋`.
    pub k: u32,
    /// `C(params)` with `|cut| ≤ C · N^k`; `None` when `N < 2`.
    pub constant: Option<f64>,
    /// Exact sum of the per-plane bounds for this `n`; never exceeds `C · N^k`.
    pub envelope: f64,
}

/// One plane removal step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneStep {
    pub phase: u8,
    /// Digit level `j` for phase 2 (planes spaced `b^j`), window exponent for phase 1.
    pub level: u32,
    pub axis: usize,
    pub offset: i64,
    pub removed: usize,
    /// Per-plane bound that `removed` was checked against.
    pub bound: u64,
}

#[derive(Clone, Debug)]
pub struct ConstructiveCut {
    /// The pruned cut.
    pub result: CutResult,
    /// Size of the plane union before pruning.
    pub plane_vertices: usize,
    pub steps: Vec<PlaneStep>,
    pub bound: Option<CutterBound>,
}

/// `C(params) = 4dbN + 2d·b^{d−1}/(N − 1)`: phase 1 removes `2d` planes of at most
/// `2bN·N^k` vertices, phase 2 a geometric series of `2d` planes of `b^{d−1}N^j`.
pub fn cutter_constant(params: &FractalParams) -> Option<f64> {
    let n = params.line_multiplicity_f64();
    if n < 2.0 {
        return None;
    }
    let (d, b) = (params.d() as f64, params.b() as f64);
    Some(4.0 * d * b * n + 2.0 * d * b.powi(params.d() as i32 - 1) / (n - 1.0))
}

fn cutter_bound(params: &FractalParams, vertices: usize) -> Option<CutterBound> {
    let nl = params.line_multiplicity().to_u64()?;
    if nl == 0 || vertices == 0 {
        return None;
    }
    let bn = params.b().checked_mul(nl)?;
    let mut k = 0u32;
    let mut pow = 1u64;
    while let Some(next) = pow.checked_mul(bn) {
        if next > vertices as u64 {
            break;
        }
        pow = next;
        k += 1;
    }
    let (d, b, nf) = (params.d() as f64, params.b() as f64, nl as f64);
    let nk = nf.powi(k as i32);
    let phase1 = 2.0 * d * 2.0 * b * nf * nk;
    let phase2: f64 = (0..k).map(|j| 2.0 * d * b.powi(params.d() as i32 - 1) * nf.powi(j as i32)).sum();
    Some(CutterBound {
        k,
        constant: cutter_constant(params),
        envelope: phase1 + phase2,
    })
}

/// Offsets in `[0, b^{k+1})` whose low `k` base-`b` digits all lie in `A`, increasing.
pub fn sparse_plane_candidates(params: &FractalParams, axis: usize, k: u32) -> Result<Vec<u64>> {
    if axis >= params.d() {
        return Err(Error::Input(format!("axis {axis} out of range for d = {}", params.d())));
    }
    if params.digits().is_empty() {
        return Err(Error::Domain("A is empty: no plane is sparser than another".into()));
    }
    let top = params.side(k + 1)?;
    Ok((0..top).filter(|&x| all_low_digits_in_a(params, x, k)).collect())
}

fn all_low_digits_in_a(params: &FractalParams, mut x: u64, k: u32) -> bool {
    for _ in 0..k {
        if !params.is_a_digit(x % params.b()) {
            return false;
        }
        x /= params.b();
    }
    true
}

/// Largest `r' ≤ r` below `b^j` whose `j` digits all lie in `A`.
fn largest_a_number_at_most(params: &FractalParams, r: u64, j: u32) -> Option<u64> {
    let b = params.b();
    let digits = params.digits();
    let max_a = *digits.last()?;
    let mut prefix = 0u64;
    let mut fallback = None;
    for pos in (0..j).rev() {
        let place = b.pow(pos);
        let rd = (r / place) % b;
        if let Some(&smaller) = digits.iter().rev().find(|&&a| a < rd) {
            // diverge here: `smaller` then the largest digit everywhere below
            let tail: u64 = (0..pos).map(|q| max_a * b.pow(q)).sum();
            fallback = Some(prefix + smaller * place + tail);
        }
        if params.is_a_digit(rd) {
            prefix += rd * place;
        } else {
            return fallback;
        }
    }
    Some(prefix)
}

/// Largest plane offset `p ≤ m` with low `j` digits in `A`. May be negative (empty plane).
fn sparse_plane_at_or_below(params: &FractalParams, m: i64, j: u32) -> i64 {
    let base = params.b().pow(j) as i64;
    let (q, r) = (m.div_euclid(base), m.rem_euclid(base) as u64);
    match largest_a_number_at_most(params, r, j) {
        Some(low) => q * base + low as i64,
        None => {
            let max_low = largest_a_number_at_most(params, base as u64 - 1, j)
                .expect("A is non-empty");
            (q - 1) * base + max_low as i64
        }
    }
}

struct Piece<'g> {
    g: &'g LevelGraph,
    ids: Vec<u32>,
}

impl Piece<'_> {
    fn lower_median(&self, axis: usize) -> i64 {
        let mut xs: Vec<u64> = self.ids.iter().map(|&v| self.g.coord(v, axis)).collect();
        let mid = (xs.len() - 1) / 2;
        *xs.select_nth_unstable(mid).1 as i64
    }

    fn side(&self) -> u64 {
        (0..self.g.params().d())
            .map(|a| {
                let (lo, hi) = self.ids.iter().fold((u64::MAX, 0u64), |(lo, hi), &v| {
                    let x = self.g.coord(v, a);
                    (lo.min(x), hi.max(x))
                });
                hi - lo + 1
            })
            .max()
            .unwrap_or(0)
    }

    fn plane_count(&self, axis: usize, offset: i64) -> usize {
        if offset < 0 {
            return 0;
        }
        self.ids
            .iter()
            .filter(|&&v| self.g.coord(v, axis) as i64 == offset)
            .count()
    }

    /// Removes the planes `lo[a]`, `hi[a]` and keeps what lies strictly between them.
    fn cut(&mut self, lo: &[i64], hi: &[i64], cut: &mut Vec<u32>) {
        let d = lo.len();
        let g = self.g;
        let mut inside = Vec::new();
        for &v in &self.ids {
            let mut on_plane = false;
            let mut between = true;
            for a in 0..d {
                let x = g.coord(v, a) as i64;
                if x == lo[a] || x == hi[a] {
                    on_plane = true;
                }
                if x <= lo[a] || x >= hi[a] {
                    between = false;
                }
            }
            if on_plane {
                cut.push(v);
            } else if between {
                inside.push(v);
            }
        }
        self.ids = inside;
    }
}

/// Runs the two-phase plane cutter on `g` with `ε = 1/2`.
///
/// Fails with a consistency error if the result is not balanced or a plane exceeds its
/// bound, either of which would mean the construction is wrong.
pub fn constructive_cut(g: &LevelGraph) -> Result<ConstructiveCut> {
    let params = g.params().clone();
    let d = params.d();
    let n = g.n();
    let limit = max_component(n, 0.5);
    let bound = cutter_bound(&params, n);
    let mut steps = Vec::new();
    let mut cut = Vec::new();
    let mut piece = Piece {
        g,
        ids: (0..n as u32).collect(),
    };

    if let Some(cb) = &bound {
        let cube = params.b().checked_pow(cb.k).unwrap_or(u64::MAX);
        if piece.ids.len() > limit && piece.side() > cube {
            let half = (cube / 2) as i64;
            let share = (piece.ids.len() / (half as usize + 1)) as u64;
            let mut lo = vec![0i64; d];
            let mut hi = vec![0i64; d];
            for a in 0..d {
                let m = piece.lower_median(a);
                for (dir, out) in [(1i64, &mut hi), (-1i64, &mut lo)] {
                    let mut best = (usize::MAX, m);
                    let mut chosen = None;
                    for dist in 0..=half {
                        let off = m + dir * dist;
                        let c = piece.plane_count(a, off);
                        if c as u64 <= share {
                            chosen = Some((c, off));
                            break;
                        }
                        if c < best.0 {
                            best = (c, off);
                        }
                    }
                    let (c, off) = chosen.unwrap_or(best);
                    out[a] = off;
                    steps.push(PlaneStep {
                        phase: 1,
                        level: cb.k,
                        axis: a,
                        offset: off,
                        removed: c,
                        bound: share,
                    });
                }
            }
            piece.cut(&lo, &hi, &mut cut);
        }
    }

    while piece.ids.len() > limit {
        let side = piece.side();
        let mut j = 0u32;
        while params.b().pow(j + 1) < side {
            j += 1;
        }
        let spacing = params.b().pow(j) as i64;
        let per_plane = params.b().pow(d as u32 - 1) as f64 * params.line_multiplicity_f64().powi(j as i32);
        let mut lo = vec![0i64; d];
        let mut hi = vec![0i64; d];
        for a in 0..d {
            let m = piece.lower_median(a);
            let p1 = if params.digits().is_empty() {
                // full grid: every plane is equally full, take the sparsest present one
                (m - spacing + 1..=m)
                    .rev()
                    .min_by_key(|&off| piece.plane_count(a, off))
                    .unwrap_or(m)
            } else {
                sparse_plane_at_or_below(&params, m, j)
            };
            lo[a] = p1;
            hi[a] = p1 + spacing;
            for off in [p1, p1 + spacing] {
                let removed = piece.plane_count(a, off);
                if removed as f64 > per_plane {
                    return Err(Error::Consistency(format!(
                        "plane x_{a} = {off} meets {removed} vertices, above its bound {per_plane}"
                    )));
                }
                steps.push(PlaneStep {
                    phase: 2,
                    level: j,
                    axis: a,
                    offset: off,
                    removed,
                    bound: per_plane as u64,
                });
            }
        }
        piece.cut(&lo, &hi, &mut cut);
    }

    cut.sort_unstable();
    cut.dedup();
    let plane_vertices = cut.len();
    if let Some(cb) = &bound {
        if plane_vertices as f64 > cb.envelope + 1e-6 {
            return Err(Error::Consistency(format!(
                "plane union of {plane_vertices} vertices exceeds the envelope {}",
                cb.envelope
            )));
        }
    }
    let cut = prune(g, &cut, limit);
    let result = CutResult::evaluate(g, &cut, 0.5)?;
    if !result.valid {
        return Err(Error::Consistency(format!(
            "cutter left a component of {} > {limit} vertices",
            result.largest_component()
        )));
    }
    Ok(ConstructiveCut {
        result,
        plane_vertices,
        steps,
        bound,
    })
}

/// Puts back every cut vertex (ascending) whose return keeps all components within `limit`.
fn prune(g: &LevelGraph, cut: &[u32], limit: usize) -> Vec<u32> {
    let adj = g.adjacency();
    let mut present = vec![true; g.n()];
    for &v in cut {
        present[v as usize] = false;
    }
    let mut uf = UnionFind::new(g.n());
    for (u, v) in adj.edges() {
        if present[u as usize] && present[v as usize] {
            uf.union(u, v);
        }
    }
    let mut kept = Vec::new();
    let mut roots = Vec::new();
    for &v in cut {
        roots.clear();
        for &w in adj.neighbors(v) {
            if present[w as usize] {
                roots.push(uf.find(w));
            }
        }
        roots.sort_unstable();
        roots.dedup();
        let merged = 1 + roots.iter().map(|&r| uf.set_size(r)).sum::<usize>();
        if merged <= limit {
            present[v as usize] = true;
            for &r in &roots {
                uf.union(v, r);
            }
        } else {
            kept.push(v);
        }
    }
    kept
}
