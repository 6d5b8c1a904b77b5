//! Lower bounds from path congestion.
//!
//! If every ordered pair `(i, j)` of a connected graph gets a path `P_{i,j}` and no
//! vertex lies on more than `m` of them, then any balanced cut of size at most `n/4`
//! has at least `n²/(8m)` vertices. On `C_k` with `m = 1` the paths below move along
//! complete lines only, one axis at a time.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CutResult;
use crate::error::{Error, Result};
use crate::fractal::lines::line_digits_complete;
use crate::fractal::{Adjacency, FractalParams, LevelGraph};

/// Refuse all-pairs path systems above this many ordered pairs.
pub const DEFAULT_MAX_PAIRS: u64 = 10_000_000;

/// Produces the walk from `from` to `to` (both endpoints included) into `path`.
pub trait Router {
    fn route(&self, from: u32, to: u32, path: &mut Vec<u32>) -> Result<()>;
}

impl<F> Router for F
where
    F: Fn(u32, u32, &mut Vec<u32>) -> Result<()>,
{
    fn route(&self, from: u32, to: u32, path: &mut Vec<u32>) -> Result<()> {
        self(from, to, path)
    }
}

/// Congestion of an all-pairs path system. Paths are regenerated on demand rather than
/// stored; ordered pairs include `i = j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSystem {
    pub n: usize,
    pub pair_count: u64,
    /// Number of paths through each vertex (a vertex counts once per path).
    pub congestion: Vec<u64>,
    pub max_congestion: u64,
}

impl PathSystem {
    /// Routes every ordered pair and accumulates congestion. Each path is checked to be
    /// a walk from `i` to `j`.
    pub fn build<R: Router + Sync>(adj: &Adjacency, router: &R, max_pairs: u64) -> Result<Self> {
        let n = adj.n();
        let pair_count = (n as u64) * (n as u64);
        if pair_count > max_pairs {
            return Err(Error::budget("path system pairs", pair_count, max_pairs));
        }
        let congestion = (0..n as u32)
            .into_par_iter()
            .try_fold(
                || (vec![0u64; n], vec![u64::MAX; n], Vec::new()),
                |(mut counts, mut stamp, mut path), i| {
                    for j in 0..n as u32 {
                        path.clear();
                        router.route(i, j, &mut path)?;
                        check_walk(adj, i, j, &path)?;
                        let tag = i as u64 * n as u64 + j as u64;
                        for &v in &path {
                            if stamp[v as usize] != tag {
                                stamp[v as usize] = tag;
                                counts[v as usize] += 1;
                            }
                        }
                    }
                    Ok((counts, stamp, path))
                },
            )
            .map(|r: Result<_>| r.map(|(counts, _, _)| counts))
            .try_reduce(
                || vec![0u64; n],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    Ok(a)
                },
            )?;
        let max_congestion = congestion.iter().copied().max().unwrap_or(0);
        Ok(PathSystem {
            n,
            pair_count,
            congestion,
            max_congestion,
        })
    }

    pub fn summary(&self) -> PathSummary {
        PathSummary {
            n: self.n,
            pair_count: self.pair_count,
            max_congestion: self.max_congestion,
            bound: raw_bound(self.n, self.max_congestion).ceil() as u64,
        }
    }
}

fn check_walk(adj: &Adjacency, from: u32, to: u32, path: &[u32]) -> Result<()> {
    if path.first() != Some(&from) || path.last() != Some(&to) {
        return Err(Error::Consistency(format!("path for ({from}, {to}) has wrong endpoints")));
    }
    for w in path.windows(2) {
        if adj.neighbors(w[0]).binary_search(&w[1]).is_err() {
            return Err(Error::Consistency(format!(
                "path for ({from}, {to}) jumps from {} to {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSummary {
    pub n: usize,
    pub pair_count: u64,
    pub max_congestion: u64,
    pub bound: u64,
}

/// Axis-by-axis replacement paths on the complete-lines subgraph of an `m = 1` family.
///
/// For `x → y`: let `i₁` be the coordinate of `x` holding an `A` digit (the first
/// coordinate if none), `i₂` the first other coordinate, and `j₁` likewise for `y`.
/// Move coordinate `i₁` to `x_{i₂}`; then every coordinate except `i₁`, `j₁` to its
/// value in `y`; then `i₁` to `y_{i₁}`; finally `j₁` to `y_{j₁}` if `j₁ ≠ i₁`. Before
/// each move the line being travelled is checked to be complete.
pub struct CanonicalPaths<'g> {
    g: &'g LevelGraph,
}

impl<'g> CanonicalPaths<'g> {
    pub fn new(g: &'g LevelGraph) -> Result<Self> {
        if g.params().m() != 1 {
            return Err(Error::Input(format!(
                "canonical paths need m = 1, got {}",
                g.params()
            )));
        }
        Ok(CanonicalPaths { g })
    }

    fn a_coordinate(&self, p: &[u64]) -> Result<Option<usize>> {
        let params = self.g.params();
        let k = self.g.level();
        let mut found = None;
        for (i, &x) in p.iter().enumerate() {
            if !params.is_a_free(x, k) {
                if found.is_some() {
                    return Err(Error::Consistency(format!(
                        "{p:?} has two coordinates with digits in A, it is not on a complete line"
                    )));
                }
                found = Some(i);
            }
        }
        Ok(found)
    }

    fn walk(&self, cur: &mut [u64], axis: usize, target: u64, path: &mut Vec<u32>) -> Result<()> {
        if cur[axis] == target {
            return Ok(());
        }
        let fixed: Vec<u64> = cur
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != axis)
            .map(|(_, &x)| x)
            .collect();
        if !line_digits_complete(self.g.params(), self.g.level(), &fixed) {
            return Err(Error::Consistency(format!(
                "moving along axis {axis} from {cur:?} leaves the complete lines"
            )));
        }
        while cur[axis] != target {
            if cur[axis] < target {
                cur[axis] += 1;
            } else {
                cur[axis] -= 1;
            }
            let id = self.g.id_of(cur).ok_or_else(|| {
                Error::Consistency(format!("{cur:?} is on a complete line but not in the graph"))
            })?;
            path.push(id);
        }
        Ok(())
    }
}

impl Router for CanonicalPaths<'_> {
    fn route(&self, from: u32, to: u32, path: &mut Vec<u32>) -> Result<()> {
        path.push(from);
        if from == to {
            return Ok(());
        }
        let x = self.g.point(from).0;
        let y = self.g.point(to).0;
        let d = x.len();
        let i1 = self.a_coordinate(&x)?.unwrap_or(0);
        let i2 = (0..d).find(|&i| i != i1).expect("d >= 2");
        let j1 = self.a_coordinate(&y)?.unwrap_or(0);

        let mut cur = x.clone();
        self.walk(&mut cur, i1, x[i2], path)?;
        for c in (0..d).filter(|&c| c != i1 && c != j1) {
            self.walk(&mut cur, c, y[c], path)?;
        }
        self.walk(&mut cur, i1, y[i1], path)?;
        if i1 != j1 {
            self.walk(&mut cur, j1, y[j1], path)?;
        }
        Ok(())
    }
}

fn raw_bound(n: usize, max_congestion: u64) -> f64 {
    if max_congestion == 0 {
        return 0.0;
    }
    (n as f64) * (n as f64) / (8.0 * max_congestion as f64)
}

/// `n²/(8m)` together with the applicability certificate for the cut-size hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathBound {
    pub n: usize,
    pub max_congestion: u64,
    pub raw: f64,
    /// `⌈raw⌉`, a lower bound on `cut^{1/2}` when `certified`.
    pub bound: u64,
    /// A valid balanced cut of at most `n/4` vertices was supplied, so the bound applies.
    pub certified: bool,
    pub witness_size: Option<usize>,
}

/// Evaluates the congestion bound. Without a witness cut of size `≤ n/4` the value is
/// returned but flagged conditional (`certified = false`).
pub fn path_lower_bound(ps: &PathSystem, witness: Option<&CutResult>) -> PathBound {
    let raw = raw_bound(ps.n, ps.max_congestion);
    let certified = witness.is_some_and(|w| {
        w.valid && w.n == ps.n && (w.epsilon - 0.5).abs() < 1e-12 && 4 * w.cut_size() <= ps.n
    });
    PathBound {
        n: ps.n,
        max_congestion: ps.max_congestion,
        raw,
        bound: raw.ceil() as u64,
        certified,
        witness_size: witness.map(CutResult::cut_size),
    }
}

/// `2^{k−1}` for the carpet's `C_k` (1 at `k = 0`, where `C_0` is a single vertex).
pub fn direct_line_lower_bound(params: &FractalParams, k: u32) -> Result<u64> {
    if !params.is_carpet() {
        return Err(Error::Input(format!(
            "the complete-line bound is specific to the carpet, got {params}"
        )));
    }
    if k == 0 {
        return Ok(1);
    }
    1u64.checked_shl(k - 1)
        .ok_or_else(|| Error::Domain(format!("2^{} overflows", k - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractal::{build_complete_lines_subgraph, GraphBudget};

    #[test]
    fn eight_cycle_trace() {
        let c = build_complete_lines_subgraph(&FractalParams::carpet(), 1, GraphBudget::default()).unwrap();
        let router = CanonicalPaths::new(&c).unwrap();
        let (x, y) = (c.id_of(&[0, 1]).unwrap(), c.id_of(&[2, 1]).unwrap());
        let mut path = Vec::new();
        router.route(x, y, &mut path).unwrap();
        let pts: Vec<Vec<u64>> = path.iter().map(|&v| c.point(v).0).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![0, 0], vec![1, 0], vec![2, 0], vec![2, 1]]);
        path.clear();
        router.route(x, x, &mut path).unwrap();
        assert_eq!(path, vec![x]);
    }

    #[test]
    fn star_is_congestion_dominated() {
        let n = 20u32;
        let edges: Vec<(u32, u32)> = (1..n).map(|v| (0, v)).collect();
        let adj = Adjacency::from_edges(n as usize, &edges).unwrap();
        let hub = |i: u32, j: u32, p: &mut Vec<u32>| -> Result<()> {
            p.push(i);
            if i != j {
                if i != 0 && j != 0 {
                    p.push(0);
                }
                p.push(j);
            }
            Ok(())
        };
        let ps = PathSystem::build(&adj, &hub, DEFAULT_MAX_PAIRS).unwrap();
        // every pair except (v, v) for leaves v passes the hub
        assert_eq!(ps.max_congestion, (n as u64) * (n as u64) - (n as u64 - 1));
        let b = path_lower_bound(&ps, None);
        assert_eq!(b.bound, 1);
        assert!(!b.certified);
    }

    #[test]
    fn broken_router_is_caught() {
        let adj = Adjacency::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let jump = |i: u32, j: u32, p: &mut Vec<u32>| -> Result<()> {
            p.push(i);
            if i != j {
                p.push(j);
            }
            Ok(())
        };
        assert!(matches!(
            PathSystem::build(&adj, &jump, DEFAULT_MAX_PAIRS),
            Err(Error::Consistency(_))
        ));
        assert!(matches!(PathSystem::build(&adj, &jump, 4), Err(Error::Budget { .. })));
    }

    #[test]
    fn direct_bound_values() {
        let c = FractalParams::carpet();
        assert_eq!(direct_line_lower_bound(&c, 1).unwrap(), 1);
        assert_eq!(direct_line_lower_bound(&c, 5).unwrap(), 16);
        assert!(direct_line_lower_bound(&FractalParams::menger(), 2).is_err());
    }

    #[test]
    fn m_must_be_one() {
        let p = FractalParams::carpet_cube();
        let c = build_complete_lines_subgraph(&p, 1, GraphBudget::default()).unwrap();
        assert!(CanonicalPaths::new(&c).is_err());
    }
}
