//! Exact arithmetic: the prime field, rationals and cyclotomic fields.

mod cyclotomic;
mod fp;
pub mod linalg;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycField, Cyclotomic, IntCyc, Rational};
pub use fp::{is_prime, FieldElement, PrimeField};
