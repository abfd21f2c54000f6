//! Exact arithmetic for Beatty sequences `⌊jβ⌋` where `β ∈ (0, 1)` is a
//! quadratic Pisot unit.
//!
//! Shifting the argument by a generalized Fibonacci number `G_i` shifts the
//! value by `G_{i-1}`, except on a sparse mismatch set that is known in closed
//! form. This crate computes both sides of that statement without floating
//! point: floors of irrational multiples come from integer square roots, and
//! every comparison against `β^i` is an exact sign test in `ℤ[β]`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod beatty;
pub mod cutproject;
mod error;
pub mod gfib;
pub mod qunit;

pub use beatty::{KIndex, MismatchRecord, MismatchTest, ScanSummary};
pub use cutproject::{LatticePoint, Window};
pub use error::{Error, Result};
pub use gfib::GFib;
pub use qunit::{Family, QuadraticUnit, ZBeta};

pub use num_bigint::BigInt;
