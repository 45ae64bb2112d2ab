use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::curves::{analyze_x0_curves, X0CurveAnalysis};
use super::fletcher::{fletcher_check_with, FletcherReport};
use super::invariants::{
    anticanonical_data, base_line_ok, base_twist, curve_bound_check, refined_twist, rho,
    rho_refined, Isotropy,
};
use super::monomials::monomials_of_degree;
use super::{weighted_monomials, Monomial, WeightSystem};
use crate::error::Result;
use crate::ext::{rational_to_f64, serde_opt_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    KeCertified,
    KeCertifiedRefined,
    Inconclusive,
    NotOrbifold,
    NotFano,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::KeCertified => "KE_CERTIFIED",
            Verdict::KeCertifiedRefined => "KE_CERTIFIED_REFINED",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::NotOrbifold => "NOT_ORBIFOLD",
            Verdict::NotFano => "NOT_FANO",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::KeCertified | Verdict::KeCertifiedRefined)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Accept the refined criterion when the basic one fails (default on).
    pub refined: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { refined: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub weights: WeightSystem,
    pub monomials: Vec<Monomial>,
    pub monomial_count: usize,
    /// Monomials of degree `d` minus graded automorphisms; `≤ 0` means rigid.
    pub moduli_estimate: i64,
    pub rigid: bool,
    pub fletcher: FletcherReport,
    pub fletcher_pass: bool,
    pub fano_index: Option<u64>,
    #[serde(with = "serde_opt_rational")]
    pub anticanonical_square: Option<BigRational>,
    pub curve_bound_ok: Option<bool>,
    pub base_line_ok: bool,
    pub base_twist: i128,
    pub refined_twist: i128,
    pub isotropy: Isotropy,
    #[serde(with = "serde_opt_rational")]
    pub rho: Option<BigRational>,
    pub rho_float: Option<f64>,
    #[serde(with = "serde_opt_rational")]
    pub rho_refined: Option<BigRational>,
    pub rho_refined_float: Option<f64>,
    pub x0_curves: Option<X0CurveAnalysis>,
    pub verdict: Verdict,
    /// Set for refined verdicts: the divisor `{x0 = 0}` was only partly
    /// checked for curves that void the refined test.
    pub refined_caveat: bool,
}

/// Full certificate with both criteria; refined verdicts carry `refined_caveat`.
pub fn certify(w: &WeightSystem) -> Result<Certificate> {
    certify_with(w, CertifyOptions::default())
}

pub fn certify_with(w: &WeightSystem, options: CertifyOptions) -> Result<Certificate> {
    let monomials = weighted_monomials(w);
    let fletcher = fletcher_check_with(w, &monomials);
    let fletcher_pass = fletcher.passes();
    let isotropy = Isotropy::of(w);
    isotropy.verify_against(&monomials)?;

    let automorphisms: usize = w
        .weights()
        .iter()
        .map(|&ai| monomials_of_degree(&w.weights(), ai).len())
        .sum();
    let moduli_estimate = monomials.len() as i64 - automorphisms as i64;

    let fano_index = w.fano_index();
    let (square, curve_ok, r, r_ref, x0) = if fano_index.is_some() {
        (
            Some(anticanonical_data(w)?.square),
            Some(curve_bound_check(w)?),
            Some(rho(w)?),
            Some(rho_refined(w)?),
            Some(analyze_x0_curves(w, &monomials, refined_twist(w))),
        )
    } else {
        (None, None, None, None, None)
    };
    let line_ok = base_line_ok(&monomials);

    let one = BigRational::one();
    let verdict = if !fletcher_pass {
        Verdict::NotOrbifold
    } else if fano_index.is_none() {
        Verdict::NotFano
    } else {
        let curves = curve_ok == Some(true);
        let basic = curves && line_ok && base_twist(w) >= 0 && r.as_ref().is_some_and(|r| *r < one);
        let refined = curves
            && refined_twist(w) >= 0
            && r_ref.as_ref().is_some_and(|r| *r < one)
            && x0.as_ref().is_some_and(|x| !x.obstructed);
        if basic {
            Verdict::KeCertified
        } else if refined && options.refined {
            Verdict::KeCertifiedRefined
        } else {
            Verdict::Inconclusive
        }
    };

    Ok(Certificate {
        weights: *w,
        monomial_count: monomials.len(),
        monomials,
        moduli_estimate,
        rigid: moduli_estimate <= 0,
        fletcher,
        fletcher_pass,
        fano_index,
        anticanonical_square: square,
        curve_bound_ok: curve_ok,
        base_line_ok: line_ok,
        base_twist: base_twist(w),
        refined_twist: refined_twist(w),
        isotropy,
        rho_float: r.as_ref().map(rational_to_f64),
        rho: r,
        rho_refined_float: r_ref.as_ref().map(rational_to_f64),
        rho_refined: r_ref,
        refined_caveat: verdict == Verdict::KeCertifiedRefined
            && !x0.as_ref().is_some_and(X0CurveAnalysis::clear),
        x0_curves: x0,
        verdict,
    })
}
