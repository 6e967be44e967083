//! Exact half-integers and rationals, and a small dense complex-matrix kernel.

mod half_int;
mod matrix;
mod rational;

pub use half_int::HalfInt;
pub use matrix::{commutator, dagger, max_abs, CMatrix, I};
pub use rational::{solve_rational_linear, LinearOutcome, Rat, RatMatrix};
