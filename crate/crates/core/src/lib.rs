//! Exact singularity exponents, Monte-Carlo and Bergman-model cross-checks,
//! and a Kähler–Einstein certifier for weighted Del Pezzo surfaces.
//!
//! - [`lct`]: log canonical thresholds from resolution data and monomial
//!   closed forms, Arnold multiplicities and the standard bounds.
//! - [`volume`]: sublevel-volume sampling and exponent regression.
//! - [`bergman`]: the radial Bergman-kernel approximation of `c·log|z|`.
//! - [`fano`]: orbifold conditions, invariants, certificates and scans.

pub mod bergman;
pub mod error;
pub mod ext;
pub mod fano;
pub mod lct;
pub mod volume;

pub use error::{Error, Result};
pub use ext::ExtRational;
