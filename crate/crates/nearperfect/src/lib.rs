//! Divisor-sum arithmetic and the near-perfect taxonomy.
//!
//! A number `n` is 2-near perfect when `sigma(n) = 2n + d1 + d2` for two
//! distinct divisors `d1`, `d2` of `n` (the *omitted* divisors). This crate
//! computes sigma exactly, classifies integers into the surrounding taxonomy
//! (perfect, abundant, pseudoperfect, weird, quasiperfect, strongly
//! 2-near perfect, ...) with explicit witnesses, generates the parametric
//! families of such numbers, and runs exhaustive desk-scale verification
//! campaigns over them.

pub mod arith;
pub mod classify;
pub mod families;
pub mod primality;
pub mod sieve;

mod error;

pub use error::{Error, Result};
