//! Exact dense linear algebra over GF(p^k), q <= 2^16.
//!
//! Field elements are integer codes: the element `sum c_i * alpha^i` has code
//! `sum c_i * p^i`, where `alpha` is a root of the deterministic modulus
//! (the lexicographically least monic irreducible, constant term first).
//! Matrices are row-major; over GF(2) rows are bit-packed in 64-bit words and
//! all kernels switch to word operations.

mod field;
mod matrix;
mod poly;

pub use field::{field_make, field_of_order, split_prime_power, Embedding, Field, FieldRef};
pub(crate) use matrix::EchelonBasis;
pub use matrix::{spin, Matrix, Rref};
pub use poly::Poly;
