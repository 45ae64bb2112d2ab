//! Certifying Kähler–Einstein metrics on weighted Del Pezzo hypersurfaces
//! `X_d ⊂ P(a0, a1, a2, a3)`.
//!
//! The certificate checks that a generic `X_d` is a well-formed quasi-smooth
//! orbifold, that `-K_X` is ample, and that the ratio `ρ` of a global lct
//! lower bound against the Kähler–Einstein threshold `2/3` is below one.

mod certify;
mod curves;
mod fletcher;
mod invariants;
mod monomials;
mod scan;
mod weights;

pub use certify::{certify, certify_with, Certificate, CertifyOptions, Verdict};
pub use curves::{analyze_x0_curves, CurveCheck, CurveShape, X0CurveAnalysis};
pub use fletcher::{
    fletcher_check, fletcher_check_with, Condition, FletcherReport, IndexWitness, PairCheck,
    PairWitness, TripleCheck,
};
pub use invariants::{
    anticanonical_data, base_line_ok, base_twist, curve_bound_check, refined_twist, rho,
    rho_refined, AnticanonicalData, Isotropy,
};
pub use monomials::weighted_monomials;
pub use scan::{scan, ScanConfig, ScanEntry, ScanReport};
pub use weights::{Monomial, WeightSystem};
