//! Exact arithmetic: Gaussian rationals, sparse Laurent polynomials, and
//! rational functions with factored denominators.

pub mod gaussian;
pub mod json;
pub mod mono;
pub mod poly;
pub mod ratfunc;
pub mod var;

pub use gaussian::GaussianRational;
pub use mono::Mono;
pub use poly::{pow_gaussian, MPoly};
pub use ratfunc::RatFunc;
pub use var::Var;
