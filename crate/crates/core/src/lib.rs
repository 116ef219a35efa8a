//! Computational companion to the modularity of the Barth-Nieto quintic
//!
//! The Barth-Nieto quintic `N` is the threefold
//! `{x0 + ... + x5 = 0, 1/x0 + ... + 1/x5 = 0}` in `P5`. Its Calabi-Yau model
//! `Y` and the double cover `Ỹ` are rigid, and the trace of Frobenius on
//! their third cohomology agrees with the Fourier coefficients of the
//! weight-4 newform `f = (η(q)η(q²)η(q³)η(q⁶))²` of level 6.
//!
//! This crate recomputes that evidence:
//!
//! - [`arith`]: prime fields with inverse, square-root and quadratic-character tables.
//! - [`varieties`]: point counts on `U`, `Ũ`, `Y`, `Ỹ` and the Cayley cubic fibres.
//! - [`qseries`]: eta-product expansions, Hecke identities and Euler factors.
//! - [`modularity`]: the finite-prime trace comparison, Hodge-number and `k` solvers.
//! - [`maps`]: birational maps to the Beauville fibred square and to Verrill's threefold.
//! - [`cache`] and [`cli`]: the count cache, JSON reports and the `bnq` command line.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`
//! directory.

pub mod arith;
pub mod cache;
pub mod cli;
pub mod error;
pub mod maps;
pub mod modularity;
pub mod qseries;
pub mod varieties;

pub use arith::PrimeField;
pub use error::{Error, Result};
pub use varieties::NPoint;

/// Version stamp written into reports and cache entries.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
