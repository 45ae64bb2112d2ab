//! Monte-Carlo oracle for singularity exponents.
//!
//! `c_K(φ)` is the growth rate of sublevel volumes: `μ({φ < log r}) ≈ r^{2c}`
//! up to a `|log r|^{n-1}` factor. The oracle samples the unit polydisk
//! around the pole, counts sublevel hits for a whole grid of radii from one
//! sample set, and regresses `log μ` on `log r`. It is statistical only;
//! nothing here is a rigorous bound.

mod fit;
mod potential;
mod sampler;
mod semicontinuity;

pub use fit::{
    estimate_sublevel_volume, fit_exponent, Envelope, ExponentFit, FitConfig, FitPoint,
    VolumeEstimate, DEFAULT_SEED,
};
pub use potential::SampledPotential;
pub use semicontinuity::{semicontinuity_experiment, SemicontinuityEntry, SemicontinuityReport};
