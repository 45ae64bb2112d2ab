//! Exact singularity exponents `c_K` and Arnold multiplicities `λ_K = 1/c_K`
//! for the classes that admit a closed form: log-resolution data, principal
//! monomials, diagonal ideals, direct sums and separated-variable sums.
//!
//! Arbitrary polynomials are deliberately out of reach here; use
//! [`crate::volume`] to estimate their exponent numerically.

mod resolution;
mod spec;

pub use resolution::{DivisorRecord, ResolutionData};
pub use spec::MonomialIdealSpec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::ext::ExtRational;

/// Singularity exponent from a log resolution: `min (a_i + 1) / b_i` over the
/// divisors whose image meets `K` and which occur in the pulled-back ideal.
///
/// Records with `b = 0` never constrain the minimum; with no constraining
/// record the exponent is `+∞`. This is exact when the resolved space is
/// smooth, which is the situation the records describe.
pub fn lct_from_resolution(data: &ResolutionData) -> Result<ExtRational> {
    data.validate()?;
    Ok(data
        .divisors
        .iter()
        .filter(|d| d.meets_k && d.b > 0)
        .map(|d| ExtRational::Finite(BigRational::new(BigInt::from(d.a + 1), BigInt::from(d.b))))
        .min()
        .unwrap_or(ExtRational::PlusInfinity))
}

/// Singularity exponent at the origin of a monomial ideal spec.
pub fn lct_monomial(spec: &MonomialIdealSpec) -> Result<ExtRational> {
    spec.validate()?;
    Ok(lct_unchecked(spec))
}

fn lct_unchecked(spec: &MonomialIdealSpec) -> ExtRational {
    match spec {
        MonomialIdealSpec::PrincipalMonomial(exps) => {
            // The identity is already a log resolution of a normal-crossing
            // monomial divisor: a_i = 0, b_i = α_i.
            let data = ResolutionData {
                divisors: exps
                    .iter()
                    .filter(|&&e| e > 0)
                    .map(|&e| DivisorRecord::new(0, u64::from(e), true))
                    .collect(),
            };
            lct_from_resolution(&data).expect("validated monomial has a positive exponent")
        }
        MonomialIdealSpec::Diagonal(orders) => ExtRational::Finite(
            orders
                .iter()
                .map(|&m| BigRational::new(1.into(), BigInt::from(m)))
                .sum(),
        ),
        MonomialIdealSpec::DirectSum(l, r) => lct_unchecked(l) + lct_unchecked(r),
        MonomialIdealSpec::SeparatedSum(l, r) => {
            (lct_unchecked(l) + lct_unchecked(r)).min(ExtRational::one())
        }
    }
}

/// `λ = 1/c` with `1/0 = +∞` and `1/+∞ = 0`.
pub fn arnold_multiplicity(c: &ExtRational) -> Result<ExtRational> {
    if c.is_negative() {
        return Err(Error::invalid(format!(
            "singularity exponent {c} is negative"
        )));
    }
    c.recip()
}

/// `λ(αφ) = α·λ(φ)`; `0·∞` is taken to be `0` (α = 0 is the zero weight, no pole).
pub fn scale_arnold(lambda: &ExtRational, alpha: &BigRational) -> Result<ExtRational> {
    lambda.scale(alpha)
}

/// Upper bound `n/(k+1)` on `|c_0(f) - c_0(p_k)|` where `p_k` is the degree-`k`
/// Taylor truncation of a holomorphic `f` in `n` variables.
pub fn truncation_gap_bound(n: u32, k: u32) -> Result<ExtRational> {
    if n == 0 {
        return Err(Error::invalid("number of variables must be >= 1"));
    }
    Ok(ExtRational::Finite(BigRational::new(
        BigInt::from(n),
        BigInt::from(k) + 1,
    )))
}

/// Enclosure `ν/n ≤ λ ≤ ν` of the Arnold multiplicity by the Lelong number `ν`.
pub fn lelong_sandwich(nu: &BigRational, n: u32) -> Result<(ExtRational, ExtRational)> {
    if nu.is_negative() {
        return Err(Error::invalid(format!("Lelong number {nu} is negative")));
    }
    if n == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    let lower = nu / BigRational::from_integer(BigInt::from(n));
    Ok((ExtRational::Finite(lower), ExtRational::Finite(nu.clone())))
}

/// True when `λ` lies in the Lelong enclosure.
pub fn within_lelong_sandwich(lambda: &ExtRational, nu: &BigRational, n: u32) -> Result<bool> {
    let (lo, hi) = lelong_sandwich(nu, n)?;
    Ok(&lo <= lambda && lambda <= &hi)
}
