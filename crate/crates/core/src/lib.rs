//! Fractal lattice graphs and their balanced vertex separators.
//!
//! [`fractal`] builds the level graphs `Γ_k(d, b, A, m)` (the Sierpiński carpet is
//! `(2, 3, {1}, 1)`, the Menger sponge `(3, 3, {1}, 1)`), their complete-lines subgraphs
//! and the layered cone. [`separation`] computes balanced cuts exactly, by a plane
//! cutter, and bounds them from below by path congestion. [`experiments`] runs count
//! checks, bound sandwiches and exponent fits; [`cli`] wraps it all in a command line.
//!
//! ```
//! use fractalsep::fractal::{build_complete_lines_subgraph, FractalParams, GraphBudget};
//! use fractalsep::separation::{cut_epsilon_exact, SearchBudget};
//!
//! let carpet = FractalParams::carpet();
//! let c1 = build_complete_lines_subgraph(&carpet, 1, GraphBudget::default())?;
//! assert_eq!(c1.n(), 8);
//! let cut = cut_epsilon_exact(&c1, 0.5, SearchBudget::default(), None)?;
//! assert_eq!(cut.cut_size(), 2);
//! # Ok::<(), fractalsep::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod experiments;
pub mod fractal;
pub mod separation;

pub use error::{Error, Result};
