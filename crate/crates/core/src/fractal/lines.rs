//! Axis-parallel lines and the complete-lines subgraph `C_k`.
//!
//! A line in direction `axis` is fixed by the other `d − 1` coordinates. It is complete
//! when every one of its `b^k` points is a vertex, which happens exactly when no digit
//! column of the fixed coordinates already holds `m` digits from `A` (the moving
//! coordinate can contribute one more).

use num_bigint::BigUint;

use super::graph::{GraphBudget, LevelGraph};
use super::{check_point, column_counts_ok, complete_lines_count, FractalParams};
use crate::error::{Error, Result};

fn check_line(params: &FractalParams, k: u32, axis: usize, fixed: &[u64]) -> Result<()> {
    if axis >= params.d() {
        return Err(Error::Input(format!("axis {axis} out of range for d = {}", params.d())));
    }
    if fixed.len() + 1 != params.d() {
        return Err(Error::Input(format!(
            "a line needs {} fixed coordinates, got {}",
            params.d() - 1,
            fixed.len()
        )));
    }
    let side = params.side(k)?;
    if let Some(&x) = fixed.iter().find(|&&x| x >= side) {
        return Err(Error::Input(format!("fixed coordinate {x} is outside [0, {side})")));
    }
    Ok(())
}

/// Digit criterion for completeness. `fixed` lists the coordinates other than `axis`, in
/// axis order; the axis itself does not affect the answer.
pub fn is_complete_line(params: &FractalParams, k: u32, axis: usize, fixed: &[u64]) -> Result<bool> {
    check_line(params, k, axis, fixed)?;
    Ok(line_digits_complete(params, k, fixed))
}

#[inline]
pub(crate) fn line_digits_complete(params: &FractalParams, k: u32, fixed: &[u64]) -> bool {
    if k == 0 || params.digits().is_empty() {
        return column_counts_ok(fixed, params, k, params.m());
    }
    match params.m().checked_sub(1) {
        Some(limit) => column_counts_ok(fixed, params, k, limit),
        None => false,
    }
}

/// Definition check: walks the whole line and tests every point for membership.
pub fn is_complete_line_brute_force(
    params: &FractalParams,
    k: u32,
    axis: usize,
    fixed: &[u64],
) -> Result<bool> {
    check_line(params, k, axis, fixed)?;
    let side = params.side(k)?;
    let mut point = insert_axis(fixed, axis, 0);
    for t in 0..side {
        point[axis] = t;
        check_point(&point, params, k)?;
        if !column_counts_ok(&point, params, k, params.m()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn insert_axis(fixed: &[u64], axis: usize, value: u64) -> Vec<u64> {
    let mut point = Vec::with_capacity(fixed.len() + 1);
    point.extend_from_slice(&fixed[..axis]);
    point.push(value);
    point.extend_from_slice(&fixed[axis..]);
    point
}

/// Every tuple of fixed coordinates in `[0, b^k)^{d−1}`, in lexicographic order.
fn fixed_tuples(params: &FractalParams, k: u32, budget: GraphBudget) -> Result<Vec<Vec<u64>>> {
    let side = params.side(k)?;
    let width = params.d() - 1;
    let total = BigUint::from(side).pow(width as u32);
    budget.check("line enumeration", &total)?;
    let mut out = Vec::new();
    let mut cur = vec![0u64; width];
    loop {
        out.push(cur.clone());
        let mut pos = width;
        loop {
            if pos == 0 {
                return Ok(out);
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

/// Fixed-coordinate tuples of every complete line in direction `axis`.
pub fn complete_lines_in_direction(
    params: &FractalParams,
    k: u32,
    axis: usize,
    budget: GraphBudget,
) -> Result<Vec<Vec<u64>>> {
    if axis >= params.d() {
        return Err(Error::Input(format!("axis {axis} out of range for d = {}", params.d())));
    }
    Ok(fixed_tuples(params, k, budget)?
        .into_iter()
        .filter(|f| line_digits_complete(params, k, f))
        .collect())
}

/// `C_k`: the subgraph of `Γ_k` induced on the union of all complete lines.
pub fn build_complete_lines_subgraph(
    params: &FractalParams,
    k: u32,
    budget: GraphBudget,
) -> Result<LevelGraph> {
    let side = params.side(k)?;
    let d = params.d();
    let upper = complete_lines_count(params, k) * BigUint::from(side) * BigUint::from(d);
    budget.check("complete-lines points (with overlaps)", &(upper.clone() / BigUint::from(d)))?;
    let mut stride_of = vec![1u64; d];
    for a in (0..d - 1).rev() {
        stride_of[a] = stride_of[a + 1] * side;
    }
    let tuples = fixed_tuples(params, k, budget)?;
    let mut keys = Vec::new();
    for axis in 0..d {
        for fixed in tuples.iter().filter(|f| line_digits_complete(params, k, f)) {
            let base: u64 = fixed
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let a = if i < axis { i } else { i + 1 };
                    x * stride_of[a]
                })
                .sum();
            keys.extend((0..side).map(|t| base + t * stride_of[axis]));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    if keys.len() > budget.max_vertices {
        return Err(Error::budget("complete-lines subgraph vertices", keys.len(), budget.max_vertices));
    }
    LevelGraph::from_sorted_keys(params.clone(), k, keys)
}
