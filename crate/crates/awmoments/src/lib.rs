//! Exact symbolic computation of Askey-Wilson moments.
//!
//! The library computes the moments μ_n(a,b,c,d;q) of the Askey-Wilson
//! orthogonal polynomials as exact rational functions, implements the known
//! closed-form moment formulas and three combinatorial models (weighted
//! Motzkin paths with striped skew shapes, staircase tableaux, and weighted
//! matchings), and cross-verifies everything against a brute-force
//! three-term-recurrence oracle. All arithmetic is exact over the Gaussian
//! rationals; nothing is ever rounded.

pub mod arith;
pub mod error;
pub mod formulas;
pub mod lattice;
pub mod oracle;
pub mod qcalc;
pub mod related;
pub mod report;
pub mod suites;
pub mod staircase;

pub use arith::{GaussianRational, MPoly, Mono, RatFunc, Var};
pub use error::{AwError, Result};
pub use report::{Status, VerificationReport};
