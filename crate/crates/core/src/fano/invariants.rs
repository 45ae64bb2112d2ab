use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Monomial, WeightSystem};
use crate::error::{Error, Result};
use crate::ext::serde_rational;

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnticanonicalData {
    /// `k - d`.
    pub index: u64,
    /// `(-K_X)² = d (k - d)² / (a0 a1 a2 a3)`.
    #[serde(with = "serde_rational")]
    pub square: BigRational,
}

pub fn anticanonical_data(w: &WeightSystem) -> Result<AnticanonicalData> {
    let index = w.require_fano()?;
    let a = w.weights();
    let prod: BigInt = a.iter().map(|&x| BigInt::from(x)).product();
    Ok(AnticanonicalData {
        index,
        square: q(BigInt::from(w.degree()) * BigInt::from(index).pow(2), prod),
    })
}

/// `3 a0 a1 > 2 d (k - d)²`: every curve through a smooth point of `X` has
/// anticanonical degree large enough for the tangent-cone argument.
pub fn curve_bound_check(w: &WeightSystem) -> Result<bool> {
    let index = w.require_fano()?;
    let a = w.weights();
    let lhs = 3u128 * u128::from(a[0]) * u128::from(a[1]);
    let rhs = 2u128 * u128::from(w.degree()) * u128::from(index).pow(2);
    Ok(lhs > rhs)
}

/// Bound `δ` on the isotropy orders of the singular points of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isotropy {
    pub delta: u64,
    /// `x3^(d/a3)` occurs in the equation, so the vertex `P3` is off `X`
    /// and the isotropy orders are bounded by `a2`.
    pub vertex_excluded: bool,
    pub witness: Option<Monomial>,
}

impl Isotropy {
    pub fn of(w: &WeightSystem) -> Isotropy {
        let a3 = w.weight(3);
        if w.degree().is_multiple_of(a3) {
            let e = (w.degree() / a3) as u32;
            Isotropy {
                delta: w.weight(2),
                vertex_excluded: true,
                witness: Some(Monomial([0, 0, 0, e])),
            }
        } else {
            Isotropy {
                delta: a3,
                vertex_excluded: false,
                witness: None,
            }
        }
    }

    /// Recompute against an explicit monomial list; the pure power of `x3`
    /// must be present whenever `a3 | d`.
    pub(crate) fn verify_against(&self, monomials: &[Monomial]) -> Result<()> {
        match self.witness {
            Some(m) if !monomials.contains(&m) => Err(Error::Internal(format!(
                "isotropy witness {m} missing from the monomial list"
            ))),
            _ => Ok(()),
        }
    }
}

/// Twist of the normal-bundle test on the base line for the basic criterion.
pub fn base_twist(w: &WeightSystem) -> i128 {
    i128::from(w.degree()) - i128::from(w.weight(0)) - i128::from(w.weight(2))
}

/// Twist for the refined criterion, which uses `x1` in place of `x0`.
pub fn refined_twist(w: &WeightSystem) -> i128 {
    i128::from(w.degree()) - i128::from(w.weight(1)) - i128::from(w.weight(2))
}

/// Whether the base line `{x0 = x1 = 0}` is not contained in `X`.
pub fn base_line_ok(monomials: &[Monomial]) -> bool {
    monomials
        .iter()
        .any(|m| m.exponent(0) == 0 && m.exponent(1) == 0)
}

/// `ρ = (4/3)·d(k-d)(k-a0-a2)/(a0 a1 a2)` when `a3 ∤ d`, with `a3` in place
/// of `a2` in the denominator otherwise.
pub fn rho(w: &WeightSystem) -> Result<BigRational> {
    rho_with(w, w.weight(0))
}

/// `ρ` with `k - a1 - a2` in place of `k - a0 - a2`.
pub fn rho_refined(w: &WeightSystem) -> Result<BigRational> {
    rho_with(w, w.weight(1))
}

fn rho_with(w: &WeightSystem, subtract: u64) -> Result<BigRational> {
    let index = w.require_fano()?;
    let [a0, a1, a2, a3] = w.weights().map(BigInt::from);
    let d = BigInt::from(w.degree());
    let k = BigInt::from(w.weight_sum());
    let core = q(4, 3)
        * int(d.clone())
        * int(BigInt::from(index))
        * int(k - BigInt::from(subtract) - a2.clone());

    let branch = if !w.degree().is_multiple_of(w.weight(3)) {
        core.clone() / int(a0.clone() * a1.clone() * a2.clone())
    } else {
        core.clone() / int(a0.clone() * a1.clone() * a3.clone())
    };
    let delta = BigInt::from(Isotropy::of(w).delta);
    let via_delta = core * int(delta) / int(a0 * a1 * a2 * a3);
    if branch != via_delta {
        return Err(Error::Internal(format!(
            "ρ branches disagree for {w}: {branch} vs {via_delta}"
        )));
    }
    Ok(branch)
}
