//! Lower bound, exact-or-incumbent and constructive cut on the carpet's complete-lines
//! subgraphs, with log–log slopes.
//!
//! cargo run --release --example sandwich_report -- [k_min] [k_max]

use fractalsep::experiments::{fit_columns, run_bound_sandwich, GraphKind, SandwichConfig};
use fractalsep::fractal::{exponent_e, FractalParams, GraphBudget};

fn main() -> fractalsep::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("levels are integers"));
    let k_min = args.next().unwrap_or(1);
    let k_max = args.next().unwrap_or(6);
    let params = FractalParams::carpet();
    let config = SandwichConfig {
        graph_budget: GraphBudget::new(4_000_000),
        ..SandwichConfig::default()
    };
    let ks: Vec<u32> = (k_min..=k_max).collect();
    let rows = run_bound_sandwich(&params, GraphKind::CompleteLines, &ks, 0.5, &config)?;

    println!(
        "{:>2} {:>9} {:>6} {:>16} {:>6} {:>12} {:>7}",
        "k", "n", "lower", "source", "exact", "constructive", "planes"
    );
    for r in &rows {
        println!(
            "{:>2} {:>9} {:>6} {:>16} {:>6} {:>12} {:>7}",
            r.k,
            r.n,
            r.lower_bound.map_or("-".into(), |x| x.to_string()),
            r.lower_source.as_deref().unwrap_or("-"),
            r.exact_or_incumbent.map_or("-".into(), |x| x.to_string()),
            r.constructive.map_or("-".into(), |x| x.to_string()),
            r.plane_vertices.map_or("-".into(), |x| x.to_string()),
        );
    }
    let e = exponent_e(&params)?;
    println!("target exponent {e:.5}");
    for f in fit_columns(&rows, k_min, k_max, Some(e))? {
        println!(
            "{:<20} slope {:.5} (k {}..{}, max residual {:.3})",
            f.column, f.fit.slope, f.k_min, f.k_max, f.fit.max_residual
        );
    }
    Ok(())
}
