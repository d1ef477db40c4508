//! Exact arithmetic kernel: fields, matrices, polynomials and the seeded PRNG.

mod field;
mod matrix;
pub mod poly;
mod rng;

pub use field::{Field, FieldCtx, PrimeField, Rationals};
pub use matrix::{rank_in_place, Matrix};
pub use rng::Rng;
