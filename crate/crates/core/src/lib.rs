//! Exact wall-crossing coefficients, torus-localization pairings and
//! residue engines for moduli of bundles on curves.
//!
//! Everything here is exact rational arithmetic over `num-rational`; the crate
//! is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod combinat;
pub mod curvepair;
mod error;
pub mod freelie;
pub mod npoints;
pub mod series;
pub mod stability;
pub mod wallcross;

pub use arith::{EpsPoly, Rational};
pub use error::{Error, Result};
