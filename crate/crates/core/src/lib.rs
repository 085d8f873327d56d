//! Numerical verification of Stieltjes-transform duality identities.
//!
//! Everything here is `no_std` with `alloc`: special functions, 1-D and
//! iterated quadrature, divided-difference kernels, alternating-series
//! acceleration, the duality framework, Hadamard contour integrals and the
//! identity catalog. Timing and IO live in the `stieltjes-verify` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod duality;
mod error;
pub mod hadamard;
pub mod kernels;
pub mod multiquad;
pub mod quad;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
