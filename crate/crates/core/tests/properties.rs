mod common;

use std::collections::BTreeSet;

use fractalsep::experiments::{fit_exponent, random_connected_subset};
use fractalsep::fractal::{
    build_complete_lines_subgraph, build_level_graph, complete_lines_count, complete_lines_in_direction,
    is_complete_line, is_complete_line_brute_force, is_vertex, vertex_count_formula, FractalParams,
    GraphBudget, LatticePoint,
};
use fractalsep::separation::{
    components, constructive_cut, cut_epsilon_exact, CanonicalPaths, PathSystem, Router, SearchBudget,
    DEFAULT_MAX_PAIRS,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{ambient, l1, naive_cut, naive_is_vertex, naive_line_complete, naive_vertices, neighbor_masks};

/// Parameters with a small ambient lattice at level `k`.
fn small_family() -> impl Strategy<Value = (FractalParams, u32)> {
    (1usize..=3, 2u64..=5)
        .prop_flat_map(|(d, b)| {
            (
                Just(d),
                Just(b),
                proptest::collection::btree_set(0..b, 0..b as usize),
                0..=d,
                0u32..=3,
            )
        })
        .prop_filter_map("ambient lattice too large", |(d, b, a, m, k)| {
            let ambient = b.checked_pow(k * d as u32)?;
            if ambient > 20_000 {
                return None;
            }
            Some((FractalParams::new(d, b, a, m).ok()?, k))
        })
}

fn m1_family() -> impl Strategy<Value = (FractalParams, u32)> {
    small_family().prop_filter("m = 1 with d ≥ 2", |(p, _)| p.m() == 1 && p.d() >= 2 && !p.digits().is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vertex_formula_matches_enumeration((p, k) in small_family()) {
        let g = build_level_graph(&p, k, GraphBudget::default()).unwrap();
        let naive = naive_vertices(&p, k);
        prop_assert_eq!(vertex_count_formula(&p, k), BigUint::from(naive.len()));
        let pts: Vec<Vec<u64>> = g.points().into_iter().map(|x| x.0).collect();
        prop_assert_eq!(pts, naive);
    }

    #[test]
    fn membership_matches_definition((p, k) in small_family(), seed in any::<u64>()) {
        let side = p.b().pow(k);
        let mut x = seed;
        for _ in 0..32 {
            let point: Vec<u64> = (0..p.d()).map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 33) % side
            }).collect();
            prop_assert_eq!(is_vertex(&point, &p, k).unwrap(), naive_is_vertex(&p, k, &point));
        }
    }

    #[test]
    fn line_completeness_equivalence((p, k) in small_family().prop_filter("d ≥ 2", |(p, _)| p.d() >= 2)) {
        let side = p.b().pow(k);
        for axis in 0..p.d() {
            let mut count = 0u64;
            for fixed in ambient(p.d() - 1, side) {
                let fast = is_complete_line(&p, k, axis, &fixed).unwrap();
                prop_assert_eq!(fast, is_complete_line_brute_force(&p, k, axis, &fixed).unwrap());
                prop_assert_eq!(fast, naive_line_complete(&p, k, axis, &fixed));
                count += fast as u64;
            }
            prop_assert_eq!(BigUint::from(count), complete_lines_count(&p, k));
            let listed = complete_lines_in_direction(&p, k, axis, GraphBudget::default()).unwrap();
            prop_assert_eq!(listed.len() as u64, count);
        }
    }

    #[test]
    fn complete_lines_subgraph_is_union_of_lines((p, k) in small_family().prop_filter("d ≥ 2", |(p, _)| p.d() >= 2)) {
        let side = p.b().pow(k);
        let mut expect = BTreeSet::new();
        for axis in 0..p.d() {
            for fixed in ambient(p.d() - 1, side) {
                if naive_line_complete(&p, k, axis, &fixed) {
                    for t in 0..side {
                        let mut point = fixed.clone();
                        point.insert(axis, t);
                        expect.insert(point);
                    }
                }
            }
        }
        let c = build_complete_lines_subgraph(&p, k, GraphBudget::default()).unwrap();
        let got: BTreeSet<Vec<u64>> = c.points().into_iter().map(|x| x.0).collect();
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn graph_invariants((p, k) in small_family()) {
        let g = build_level_graph(&p, k, GraphBudget::default()).unwrap();
        g.check_invariants().unwrap();
        let pts = g.points();
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for v in 0..g.n() as u32 {
            prop_assert!(g.adjacency().degree(v) <= 2 * p.d());
            for &w in g.adjacency().neighbors(v) {
                prop_assert_eq!(l1(g.point(v).coords(), g.point(w).coords()), 1);
            }
        }
        // every unit step between vertices is an edge
        for (i, a) in pts.iter().enumerate() {
            for axis in 0..p.d() {
                let mut b = a.0.clone();
                b[axis] += 1;
                if let Some(j) = g.id_of(&b) {
                    prop_assert!(g.adjacency().neighbors(i as u32).contains(&j));
                }
            }
        }
    }

    #[test]
    fn levels_nest_when_zero_is_free((p, k) in small_family().prop_filter("0 ∉ A", |(p, k)| !p.is_a_digit(0) && *k < 3)) {
        let small = build_level_graph(&p, k, GraphBudget::default()).unwrap();
        prop_assume!(p.b().checked_pow((k + 1) * p.d() as u32).is_some_and(|x| x <= 200_000));
        let big = build_level_graph(&p, k + 1, GraphBudget::default()).unwrap();
        for x in small.points() {
            prop_assert!(big.contains(x.coords()));
        }
    }

    #[test]
    fn params_json_round_trip((p, _) in small_family()) {
        let json = serde_json::to_string(&p).unwrap();
        let back: FractalParams = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn fit_recovers_power_laws(e in 0.05f64..1.5, c in 0.1f64..50.0, base in 2.0f64..9.0) {
        let pts: Vec<(f64, f64)> = (1..7).map(|k| {
            let n = base.powi(k);
            (n, c * n.powf(e))
        }).collect();
        let fit = fit_exponent(&pts).unwrap();
        prop_assert!((fit.slope - e).abs() < 1e-9);
        prop_assert!(fit.max_residual < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_enumeration_and_is_monotone(seed in any::<u64>(), size in 1usize..=10) {
        let g = build_level_graph(&FractalParams::carpet(), 2, GraphBudget::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = g.induced(&random_connected_subset(g.adjacency(), size, &mut rng));
        let masks = neighbor_masks(&h);
        let mut previous = usize::MAX;
        for eps in [0.2, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9] {
            let r = cut_epsilon_exact(&h, eps, SearchBudget::default(), None).unwrap();
            prop_assert!(r.valid && r.proved_optimal);
            prop_assert_eq!(r.cut_size(), naive_cut(&masks, eps) as usize);
            prop_assert!(r.cut_size() <= previous);
            previous = r.cut_size();
        }
    }

    #[test]
    fn constructive_cuts_are_balanced((p, k) in small_family().prop_filter("non-empty A", |(p, _)| !p.digits().is_empty())) {
        let g = build_level_graph(&p, k, GraphBudget::default()).unwrap();
        prop_assume!(g.n() > 0);
        let c = constructive_cut(&g).unwrap();
        prop_assert!(c.result.valid);
        prop_assert!(c.result.cut_size() <= c.plane_vertices);
        if let Some(b) = &c.bound {
            prop_assert!(c.plane_vertices as f64 <= b.envelope + 1e-9);
        }
        let sizes = components(g.adjacency(), &c.result.cut_ids);
        prop_assert_eq!(sizes.iter().sum::<usize>() + c.result.cut_size(), g.n());
    }

    #[test]
    fn canonical_paths_are_walks_and_congestion_recounts((p, k) in m1_family()) {
        let c = build_complete_lines_subgraph(&p, k, GraphBudget::default()).unwrap();
        prop_assume!(c.n() > 0 && c.n() <= 400);
        let router = CanonicalPaths::new(&c).unwrap();
        let ps = PathSystem::build(c.adjacency(), &router, DEFAULT_MAX_PAIRS).unwrap();
        prop_assert_eq!(ps.pair_count, (c.n() * c.n()) as u64);
        let mut counts = vec![0u64; c.n()];
        let mut path = Vec::new();
        for x in 0..c.n() as u32 {
            for y in 0..c.n() as u32 {
                path.clear();
                router.route(x, y, &mut path).unwrap();
                prop_assert_eq!(path[0], x);
                prop_assert_eq!(*path.last().unwrap(), y);
                for w in path.windows(2) {
                    prop_assert_eq!(l1(c.point(w[0]).coords(), c.point(w[1]).coords()), 1);
                }
                let distinct: BTreeSet<u32> = path.iter().copied().collect();
                for v in distinct {
                    counts[v as usize] += 1;
                }
            }
        }
        prop_assert_eq!(&counts, &ps.congestion);
    }
}

/// Deleting one vertex of `C_2` always leaves a component above half of its 56 vertices.
#[test]
fn single_deletions_leave_a_big_component() {
    let c = build_complete_lines_subgraph(&FractalParams::carpet(), 2, GraphBudget::default()).unwrap();
    assert_eq!(c.n(), 56);
    for v in 0..56u32 {
        assert!(components(c.adjacency(), &[v])[0] > 28, "deleting {:?}", c.point(v));
    }
}

/// Random sets below `2^{k−1}` vertices never balance `C_k` for `k ≤ 3`.
#[test]
fn small_random_sets_do_not_balance() {
    use rand::seq::index::sample;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 2..=3u32 {
        let c = build_complete_lines_subgraph(&FractalParams::carpet(), k, GraphBudget::default()).unwrap();
        let size = (1usize << (k - 1)) - 1;
        for _ in 0..2000 {
            let set: Vec<u32> = sample(&mut rng, c.n(), size).into_iter().map(|i| i as u32).collect();
            assert!(components(c.adjacency(), &set)[0] > c.n() / 2);
        }
    }
}

#[test]
fn carpet_complete_lines_closed_form() {
    for k in 0..=6u32 {
        let c = build_complete_lines_subgraph(&FractalParams::carpet(), k, GraphBudget::default()).unwrap();
        assert_eq!(c.n() as u64, 2 * 6u64.pow(k) - 4u64.pow(k));
    }
}

#[test]
fn carpet_path_trace_on_the_cycle() {
    let c = build_complete_lines_subgraph(&FractalParams::carpet(), 1, GraphBudget::default()).unwrap();
    let router = CanonicalPaths::new(&c).unwrap();
    let id = |x: u64, y: u64| c.id_of(&[x, y]).unwrap();
    let mut path = Vec::new();
    router.route(id(0, 1), id(2, 1), &mut path).unwrap();
    let pts: Vec<LatticePoint> = path.iter().map(|&v| c.point(v)).collect();
    let want: Vec<LatticePoint> = [[0, 1], [0, 0], [1, 0], [2, 0], [2, 1]]
        .iter()
        .map(|p| LatticePoint(p.to_vec()))
        .collect();
    assert_eq!(pts, want);
}
