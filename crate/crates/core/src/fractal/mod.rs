//! Fractal lattice families `S(d, b, A, m)`.
//!
//! A level-`k` point is a tuple of `d` integers in `[0, b^k)`. Writing each
//! coordinate in base `b` and stacking the digits into columns (one column per
//! digit position), the point belongs to `Γ_k` when no column holds more than
//! `m` digits from `A`. The Sierpiński carpet is `(2, 3, {1}, 1)` and the
//! Menger sponge is `(3, 3, {1}, 1)`.

mod cone;
mod export;
mod graph;
pub(crate) mod lines;

pub use cone::{build_cone, ConeGraph};
pub use export::{parse_graph, render_svg, write_edge_list, write_header, GraphHeader};
pub use graph::{
    build_level_graph, Adjacency, GraphBudget, LatticePoint, LevelGraph, DEFAULT_MAX_VERTICES,
};
pub use lines::{
    build_complete_lines_subgraph, complete_lines_in_direction, is_complete_line,
    is_complete_line_brute_force,
};

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The tuple `(d, b, A, m)` defining a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct FractalParams {
    d: usize,
    b: u64,
    digits: Vec<u64>,
    m: usize,
    in_a: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    d: usize,
    b: u64,
    #[serde(rename = "A")]
    digits: Vec<u64>,
    m: usize,
}

impl TryFrom<RawParams> for FractalParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        FractalParams::new(raw.d, raw.b, raw.digits, raw.m)
    }
}

impl From<FractalParams> for RawParams {
    fn from(p: FractalParams) -> Self {
        RawParams {
            d: p.d,
            b: p.b,
            digits: p.digits,
            m: p.m,
        }
    }
}

impl FractalParams {
    pub fn new(d: usize, b: u64, digits: impl IntoIterator<Item = u64>, m: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("dimension d = {d} must be at least 2")));
        }
        if b < 3 {
            return Err(Error::InvalidParams(format!("base b = {b} must be at least 3")));
        }
        if m > d {
            return Err(Error::InvalidParams(format!("threshold m = {m} exceeds d = {d}")));
        }
        let mut digits: Vec<u64> = digits.into_iter().collect();
        if let Some(bad) = digits.iter().find(|&&a| a >= b) {
            return Err(Error::InvalidParams(format!("digit {bad} is not in [0, {})", b - 1)));
        }
        digits.sort_unstable();
        digits.dedup();
        let b_usize = usize::try_from(b)
            .map_err(|_| Error::InvalidParams(format!("base {b} does not fit in memory")))?;
        let mut in_a = vec![false; b_usize];
        for &a in &digits {
            in_a[a as usize] = true;
        }
        Ok(FractalParams { d, b, digits, m, in_a })
    }

    /// Sierpiński carpet `(2, 3, {1}, 1)`.
    pub fn carpet() -> Self {
        Self::new(2, 3, [1], 1).expect("carpet parameters are valid")
    }

    /// Menger sponge `(3, 3, {1}, 1)`.
    pub fn menger() -> Self {
        Self::new(3, 3, [1], 1).expect("menger parameters are valid")
    }

    /// Three dimensional carpet `(3, 3, {1}, 2)`: only the middle cube is removed.
    pub fn carpet_cube() -> Self {
        Self::new(3, 3, [1], 2).expect("cube parameters are valid")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The digit set `A`, sorted and deduplicated.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_a_digit(&self, digit: u64) -> bool {
        self.in_a[digit as usize]
    }

    pub fn is_carpet(&self) -> bool {
        *self == Self::carpet()
    }

    /// `b^k`, the side length of the level-`k` box.
    pub fn side(&self, k: u32) -> Result<u64> {
        self.b
            .checked_pow(k)
            .ok_or_else(|| Error::budget("side length b^k", format!("{}^{k}", self.b), u64::MAX))
    }

    /// `true` when `x` has no base-`b` digit in `A` among its lowest `k` positions.
    pub fn is_a_free(&self, mut x: u64, k: u32) -> bool {
        for _ in 0..k {
            if self.is_a_digit(x % self.b) {
                return false;
            }
            x /= self.b;
        }
        true
    }

    /// Number of allowed digit columns for a point, `M = Σ_{i≤m} C(d,i)|A|^i(b−|A|)^{d−i}`.
    pub fn column_multiplicity(&self) -> BigUint {
        column_sum(self.d, self.b, self.digits.len(), self.m as isize)
    }

    /// Complete lines per direction and per level, `N = Σ_{i<m} C(d−1,i)|A|^i(b−|A|)^{d−1−i}`.
    pub fn line_multiplicity(&self) -> BigUint {
        column_sum(self.d - 1, self.b, self.digits.len(), self.m as isize - 1)
    }

    pub fn line_multiplicity_f64(&self) -> f64 {
        self.line_multiplicity().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for FractalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "S({},{},{{{}}},{})", self.d, self.b, digits.join(","), self.m)
    }
}

fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Σ_{i=0}^{upper} C(width,i) a^i (b−a)^{width−i}`; empty sum when `upper < 0`.
fn column_sum(width: usize, b: u64, a: usize, upper: isize) -> BigUint {
    let mut total = BigUint::zero();
    if upper < 0 {
        return total;
    }
    let upper = (upper as usize).min(width);
    let a_big = BigUint::from(a);
    let rest = BigUint::from(b - a as u64);
    for i in 0..=upper {
        total += binomial(width, i) * a_big.pow(i as u32) * rest.pow((width - i) as u32);
    }
    total
}

/// The base-`b` digit of `x` at position `j`, i.e. `⌊x / b^j⌋ mod b`.
pub fn digit(x: u64, j: u32, b: u64) -> u64 {
    match b.checked_pow(j) {
        Some(p) => (x / p) % b,
        None => 0,
    }
}

/// Membership of `p` in `V_k`.
pub fn is_vertex(p: &[u64], params: &FractalParams, k: u32) -> Result<bool> {
    check_point(p, params, k)?;
    Ok(column_counts_ok(p, params, k, params.m()))
}

pub(crate) fn check_point(p: &[u64], params: &FractalParams, k: u32) -> Result<()> {
    if p.len() != params.d() {
        return Err(Error::Input(format!(
            "point has {} coordinates, expected {}",
            p.len(),
            params.d()
        )));
    }
    let side = params.side(k)?;
    if let Some(&x) = p.iter().find(|&&x| x >= side) {
        return Err(Error::Input(format!("coordinate {x} is outside [0, {side})")));
    }
    Ok(())
}

/// `true` iff every one of the lowest `k` digit columns of `coords` holds at most
/// `limit` digits from `A`.
pub(crate) fn column_counts_ok(coords: &[u64], params: &FractalParams, k: u32, limit: usize) -> bool {
    let mut counts = [0u16; 64];
    let b = params.b();
    for &x in coords {
        let mut x = x;
        for count in counts.iter_mut().take(k as usize) {
            if params.is_a_digit(x % b) {
                *count += 1;
            }
            x /= b;
        }
    }
    counts[..k as usize].iter().all(|&c| c as usize <= limit)
}

/// Closed form `M^k` for `|V_k|`.
pub fn vertex_count_formula(params: &FractalParams, k: u32) -> BigUint {
    params.column_multiplicity().pow(k)
}

/// Number of complete lines in one direction at level `k`.
///
/// Equals `N^k`, except for `A = ∅` with `m = 0` where the graph is the full grid and
/// every one of the `b^{(d−1)k}` lines is complete while the sum for `N` is empty.
pub fn complete_lines_count(params: &FractalParams, k: u32) -> BigUint {
    if params.digits().is_empty() {
        return BigUint::from(params.b()).pow((params.d() as u32 - 1) * k);
    }
    params.line_multiplicity().pow(k)
}

/// Separation exponent `E = log N / (log N + log b)`.
pub fn exponent_e(params: &FractalParams) -> Result<f64> {
    let n = params.line_multiplicity();
    if n.is_zero() {
        return Err(Error::Domain(format!(
            "{params} has no complete lines (N = 0), the exponent is undefined"
        )));
    }
    let ln_n = ln_big(&n);
    Ok(ln_n / (ln_n + (params.b() as f64).ln()))
}

fn ln_big(x: &BigUint) -> f64 {
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(60);
            let top = (x >> shift).to_f64().unwrap_or(1.0);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}
