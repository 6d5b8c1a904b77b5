//! Counting formulas and separation exponents for several fractal families, checked by
//! enumeration.
//!
//! cargo run --release --example parameter_families

use fractalsep::experiments::run_count_checks;
use fractalsep::fractal::{exponent_e, vertex_count_formula, FractalParams, GraphBudget};

fn main() -> fractalsep::Result<()> {
    let families = [
        FractalParams::carpet(),
        FractalParams::menger(),
        FractalParams::carpet_cube(),
        FractalParams::new(2, 5, [1, 3], 1)?,
        FractalParams::new(2, 5, [0, 3, 4], 1)?,
        FractalParams::new(2, 8, [1, 3, 6], 1)?,
    ];
    for p in &families {
        let rows = run_count_checks(p, 3, GraphBudget::default())?;
        let ok = rows.iter().all(|r| r.ok);
        println!(
            "{p:<22} M = {:<4} N = {:<2} E = {:.5}  |V_3| = {:<8} counts {}",
            p.column_multiplicity(),
            p.line_multiplicity(),
            exponent_e(p)?,
            vertex_count_formula(p, 3),
            if ok { "match" } else { "MISMATCH" }
        );
        for r in rows.iter().filter(|r| !r.ok) {
            println!("  {r:?}");
        }
    }
    Ok(())
}
