//! Separation exponents from line multiplicities, and a log–log fit on synthetic data.
//!
//! cargo run --example exponent_fit

use fractalsep::experiments::fit_exponent;
use fractalsep::fractal::{exponent_e, FractalParams};

fn main() -> fractalsep::Result<()> {
    for p in [FractalParams::carpet(), FractalParams::menger(), FractalParams::carpet_cube()] {
        let e = exponent_e(&p)?;
        println!("{p:<20} N = {} E = {e:.6} Q = 1/(1-E) = {:.6}", p.line_multiplicity(), 1.0 / (1.0 - e));
    }

    let e = exponent_e(&FractalParams::carpet())?;
    let points: Vec<(f64, f64)> = (1..=8).map(|k| {
        let n = 2.0 * 6f64.powi(k) - 4f64.powi(k);
        (n, n.powf(e))
    })
    .collect();
    let f = fit_exponent(&points)?;
    println!("synthetic n^E fit: slope {:.12}, residual {:.1e}", f.slope, f.max_residual);
    Ok(())
}
