//! One-variable radial model of the Bergman-kernel approximation `ψ_m`.
//!
//! For `φ(z) = c·log|z|` on the unit disk, the weighted space
//! `H_{mφ} = {f : ∫|f|² |z|^{-2mc} dV < ∞}` has the orthogonal monomial
//! basis `z^k`, `k ≥ k_min`, because
//! `∫_disk |z|^{2k} |z|^{-2mc} dV = π/(k + 1 - mc)` whenever `k + 1 > mc`.
//! The orthonormal basis is `g_k = sqrt(σ_k)·z^k` with `σ_k = (k+1-mc)/π`, so
//!
//! ```text
//! ψ_m(z) = (1/2m)·log Σ_{k ≥ k_min} σ_k |z|^{2k}
//! ```
//!
//! and every quantity in the approximation theorem is explicit: the Lelong
//! number of `ψ_m` at 0 is `k_min/m`, and the model's pointwise constant is
//! `ψ_m ≥ φ - log(π)/(2m)`.
//!
//! Only `n = 1` radial weights are modelled.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{rational_to_f64, serde_rational, ExtRational};

/// Default number of stored coefficients beyond `k_min`.
pub const DEFAULT_EXTRA_TERMS: u64 = 64;
/// Smallest admissible `K_max - k_min`.
pub const MIN_EXTRA_TERMS: u64 = 8;

/// The weight `φ(z) = c·log|z|` on the unit disk; `ν(φ, 0) = c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadialWeight {
    #[serde(with = "serde_rational")]
    c: BigRational,
}

impl RadialWeight {
    pub fn new(c: BigRational) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::invalid(format!(
                "weight coefficient {c} must be >= 0"
            )));
        }
        Ok(RadialWeight { c })
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergmanApprox {
    pub weight: RadialWeight,
    pub m: u64,
    pub k_min: u64,
    pub k_max: u64,
}

/// Smallest `k` with `k + 1 - mc > 0`. When `mc` is an integer the borderline
/// `k = mc - 1` has a divergent norm, so `k_min = mc`; otherwise `floor(mc)`.
pub fn k_min(c: &BigRational, m: u64) -> u64 {
    let mc = c * BigRational::from_integer(BigInt::from(m));
    let floor = mc.numer().div_floor(mc.denom());
    floor.to_u64().expect("m·c fits in u64")
}

pub fn build_approx(weight: &RadialWeight, m: u64, k_max: Option<u64>) -> Result<BergmanApprox> {
    if m == 0 {
        return Err(Error::invalid("m must be >= 1"));
    }
    let k_min = k_min(&weight.c, m);
    let k_max = k_max.unwrap_or(k_min + DEFAULT_EXTRA_TERMS);
    if k_max < k_min + MIN_EXTRA_TERMS {
        return Err(Error::invalid(format!(
            "K_max = {k_max} must be >= k_min + {MIN_EXTRA_TERMS} = {}",
            k_min + MIN_EXTRA_TERMS
        )));
    }
    Ok(BergmanApprox {
        weight: weight.clone(),
        m,
        k_min,
        k_max,
    })
}

/// `ψ_m(|z|)` together with a bound on the error from truncating at `K_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiValue {
    pub value: f64,
    /// `ψ_true - value ∈ [0, truncation_bound]`.
    pub truncation_bound: f64,
}

impl BergmanApprox {
    pub fn mc(&self) -> BigRational {
        self.weight.c() * BigRational::from_integer(BigInt::from(self.m))
    }

    /// `π·σ_k = k + 1 - mc`, exact; zero outside the stored range.
    pub fn sigma_times_pi(&self, k: u64) -> BigRational {
        if k < self.k_min || k > self.k_max {
            return BigRational::zero();
        }
        BigRational::from_integer(BigInt::from(k + 1)) - self.mc()
    }

    /// The stored table `(k, π·σ_k)` for `k_min ≤ k ≤ K_max`.
    pub fn coefficients(&self) -> Vec<(u64, BigRational)> {
        (self.k_min..=self.k_max)
            .map(|k| (k, self.sigma_times_pi(k)))
            .collect()
    }

    pub fn eval_psi(&self, z_abs: f64) -> Result<PsiValue> {
        if !(z_abs > 0.0 && z_abs < 1.0) {
            return Err(Error::invalid(format!("|z| = {z_abs} must lie in (0, 1)")));
        }
        let q = z_abs * z_abs;
        let mc = rational_to_f64(&self.mc());
        let m = self.m as f64;
        // Factor out q^k_min so that large k_min does not underflow.
        let partial: f64 = (self.k_min..=self.k_max)
            .map(|k| (k as f64 + 1.0 - mc) * q.powi((k - self.k_min) as i32))
            .sum();
        let log_sum = (self.k_min as f64) * q.ln() + partial.ln() - std::f64::consts::PI.ln();
        let value = log_sum / (2.0 * m);

        // Σ_{k>K}(k+1-mc)q^k ≤ Σ_{k>K}(k+1)q^k = q^{K+1}((K+2) - (K+1)q)/(1-q)²,
        // and log(1 + tail/partial) ≤ tail/partial.
        let kk = self.k_max as f64;
        let log_tail = (kk + 1.0 - self.k_min as f64) * q.ln() + ((kk + 2.0) - (kk + 1.0) * q).ln()
            - 2.0 * (1.0 - q).ln();
        let ratio = (log_tail - partial.ln()).exp();
        Ok(PsiValue {
            value,
            truncation_bound: ratio / (2.0 * m),
        })
    }

    /// `ν(ψ_m, 0) = k_min/m`, the lowest degree present in the series.
    pub fn lelong_number(&self) -> ExtRational {
        ExtRational::Finite(BigRational::new(
            BigInt::from(self.k_min),
            BigInt::from(self.m),
        ))
    }

    /// The model constant `C1 = log(π)/2` of `ψ_m ≥ φ - C1/m`.
    pub fn lower_bound_constant() -> f64 {
        std::f64::consts::PI.ln() / 2.0
    }

    /// `φ(z) - C1/m = c·log|z| - log(π)/(2m)`.
    pub fn pointwise_lower_bound(&self, z_abs: f64) -> f64 {
        rational_to_f64(self.weight.c()) * z_abs.ln() - Self::lower_bound_constant() / self.m as f64
    }

    /// Exact check of `ν(φ) - n/m ≤ ν(ψ_m) ≤ ν(φ)` with `n = 1`; in this
    /// model it is also the Arnold-multiplicity comparison with `K = {0}`.
    pub fn lelong_sandwich_holds(&self) -> bool {
        let nu_psi = BigRational::new(BigInt::from(self.k_min), BigInt::from(self.m));
        let c = self.weight.c();
        let lower = c - BigRational::new(1.into(), BigInt::from(self.m));
        lower <= nu_psi && &nu_psi <= c
    }

    pub fn report(&self, eval_at: Option<f64>) -> Result<BergmanReport> {
        let evaluation = eval_at
            .map(|z| -> Result<PointCheck> {
                let psi = self.eval_psi(z)?;
                let bound = self.pointwise_lower_bound(z);
                Ok(PointCheck {
                    z_abs: z,
                    psi_m: psi.value,
                    truncation_bound: psi.truncation_bound,
                    lower_bound: bound,
                    lower_bound_ok: psi.value >= bound,
                })
            })
            .transpose()?;
        Ok(BergmanReport {
            c: self.weight.c().clone(),
            m: self.m,
            mc: self.mc(),
            k_min: self.k_min,
            k_max: self.k_max,
            lelong_psi_m: self.lelong_number(),
            lelong_sandwich_ok: self.lelong_sandwich_holds(),
            arnold_bound_ok: self.lelong_sandwich_holds(),
            lower_bound_constant_float: Self::lower_bound_constant(),
            evaluation,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCheck {
    pub z_abs: f64,
    pub psi_m: f64,
    pub truncation_bound: f64,
    pub lower_bound: f64,
    pub lower_bound_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergmanReport {
    #[serde(with = "serde_rational")]
    pub c: BigRational,
    pub m: u64,
    #[serde(with = "serde_rational")]
    pub mc: BigRational,
    pub k_min: u64,
    pub k_max: u64,
    pub lelong_psi_m: ExtRational,
    pub lelong_sandwich_ok: bool,
    pub arnold_bound_ok: bool,
    pub lower_bound_constant_float: f64,
    pub evaluation: Option<PointCheck>,
}
