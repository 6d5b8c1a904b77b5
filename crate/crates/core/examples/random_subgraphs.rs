//! Exact search against subset enumeration on random connected subgraphs of a carpet
//! level.
//!
//! cargo run --release --example random_subgraphs -- [seed] [trials]

use fractalsep::experiments::{run_suite, Suite, SuiteOptions, DEFAULT_SEED};

fn main() -> fractalsep::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(DEFAULT_SEED, |s| s.parse().expect("seed is an integer"));
    let trials = args.next().map_or(50, |s| s.parse().expect("trials is an integer"));
    let opts = SuiteOptions {
        seed,
        trials,
        ..SuiteOptions::default()
    };
    let report = run_suite(Suite::RandomSubgraphs, &opts)?;
    let agree = report.oracle.iter().filter(|r| r.agree).count();
    println!("{agree}/{} comparisons agree (seed {seed})", report.oracle.len());
    println!("digest {}", report.digest()?);
    Ok(())
}
