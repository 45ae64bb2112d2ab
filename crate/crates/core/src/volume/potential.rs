use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lct::MonomialIdealSpec;

type Evaluator = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A weight `φ` on a polydisk in `ℂⁿ`, evaluated at points given as `2n`
/// real coordinates `(x1, y1, x2, y2, ...)`.
///
/// The evaluator must be deterministic; `-∞` is a legal value (the pole).
#[derive(Clone)]
pub struct SampledPotential {
    dim: usize,
    radius: f64,
    label: String,
    eval: Evaluator,
}

impl fmt::Debug for SampledPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledPotential")
            .field("dim", &self.dim)
            .field("radius", &self.radius)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl SampledPotential {
    pub fn new<F>(dim: usize, label: impl Into<String>, eval: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if dim == 0 {
            return Err(Error::invalid("potential dimension must be >= 1"));
        }
        Ok(SampledPotential {
            dim,
            radius: 1.0,
            label: label.into(),
            eval: Arc::new(eval),
        })
    }

    /// Polydisk radius per coordinate (default 1).
    pub fn with_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::invalid(format!(
                "polydisk radius {radius} must be positive"
            )));
        }
        self.radius = radius;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Lebesgue volume of the sampling polydisk, `(π R²)ⁿ`.
    pub fn domain_volume(&self) -> f64 {
        (std::f64::consts::PI * self.radius * self.radius).powi(self.dim as i32)
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), 2 * self.dim);
        (self.eval)(point)
    }

    /// `φ = Σ αᵢ log|zᵢ|`, i.e. `log|z^α|`.
    pub fn monomial(exponents: &[u32]) -> Result<Self> {
        let spec = MonomialIdealSpec::PrincipalMonomial(exponents.to_vec());
        spec.validate()?;
        let exps: Vec<f64> = exponents.iter().map(|&e| f64::from(e)).collect();
        SampledPotential::new(exps.len(), spec.to_string(), move |p| {
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0.0)
                .map(|(i, &e)| e * p[2 * i].hypot(p[2 * i + 1]).ln())
                .sum()
        })
    }

    /// The constant weight `φ ≡ value`.
    pub fn constant(dim: usize, value: f64) -> Result<Self> {
        SampledPotential::new(dim, format!("const:{value}"), move |_| value)
    }

    /// `φ_t = log|z1^m + t·z2^p|`.
    pub fn separated_binomial(m: u32, p: u32, t: f64) -> Result<Self> {
        if m == 0 || p == 0 {
            return Err(Error::invalid("binomial exponents must be >= 1"));
        }
        let (m, p) = (m as i32, p as i32);
        SampledPotential::new(2, format!("log|z1^{m} + {t} z2^{p}|"), move |x| {
            let z1 = Complex64::new(x[0], x[1]);
            let z2 = Complex64::new(x[2], x[3]);
            (z1.powi(m) + z2.powi(p) * t).norm().ln()
        })
    }

    /// Weight attached to a monomial ideal spec: `log|f|` for the function
    /// forms (`mono`, `ssum` of functions) and `log max |generator|` for the
    /// ideal forms (`diag`, `dsum`). Both have the singularity exponent that
    /// [`crate::lct::lct_monomial`] computes.
    pub fn from_spec(spec: &MonomialIdealSpec) -> Result<Self> {
        spec.validate()?;
        let weight = build_weight(spec)?;
        SampledPotential::new(spec.num_vars(), spec.to_string(), move |p| weight.eval(p))
    }

    /// `φ + h` for a bounded perturbation `h`; the exponent does not change.
    pub fn plus_bounded<F>(&self, label: &str, h: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let base = self.eval.clone();
        SampledPotential {
            dim: self.dim,
            radius: self.radius,
            label: format!("{} + {label}", self.label),
            eval: Arc::new(move |p| base(p) + h(p)),
        }
    }
}

enum Weight {
    Function(HoloFn),
    /// `max_i mᵢ log|zᵢ|` over the block starting at `offset`.
    Diagonal {
        offset: usize,
        orders: Vec<f64>,
    },
    Max(Box<Weight>, Box<Weight>),
}

impl Weight {
    fn eval(&self, p: &[f64]) -> f64 {
        match self {
            Weight::Function(f) => f.eval(p).norm().ln(),
            Weight::Diagonal { offset, orders } => orders
                .iter()
                .enumerate()
                .map(|(i, &m)| {
                    let j = offset + i;
                    m * p[2 * j].hypot(p[2 * j + 1]).ln()
                })
                .fold(f64::NEG_INFINITY, f64::max),
            Weight::Max(l, r) => l.eval(p).max(r.eval(p)),
        }
    }
}

enum HoloFn {
    Monomial { offset: usize, exps: Vec<i32> },
    Sum(Box<HoloFn>, Box<HoloFn>),
}

impl HoloFn {
    fn eval(&self, p: &[f64]) -> Complex64 {
        match self {
            HoloFn::Monomial { offset, exps } => exps
                .iter()
                .enumerate()
                .map(|(i, &e)| {
                    let j = offset + i;
                    Complex64::new(p[2 * j], p[2 * j + 1]).powi(e)
                })
                .product(),
            HoloFn::Sum(l, r) => l.eval(p) + r.eval(p),
        }
    }
}

fn build_weight(spec: &MonomialIdealSpec) -> Result<Weight> {
    fn weight(spec: &MonomialIdealSpec, offset: usize) -> Result<Weight> {
        Ok(match spec {
            MonomialIdealSpec::PrincipalMonomial(_) | MonomialIdealSpec::SeparatedSum(..) => {
                Weight::Function(function(spec, offset)?)
            }
            MonomialIdealSpec::Diagonal(m) => Weight::Diagonal {
                offset,
                orders: m.iter().map(|&x| f64::from(x)).collect(),
            },
            MonomialIdealSpec::DirectSum(l, r) => Weight::Max(
                Box::new(weight(l, offset)?),
                Box::new(weight(r, offset + l.num_vars())?),
            ),
        })
    }

    fn function(spec: &MonomialIdealSpec, offset: usize) -> Result<HoloFn> {
        Ok(match spec {
            MonomialIdealSpec::PrincipalMonomial(e) => HoloFn::Monomial {
                offset,
                exps: e.iter().map(|&x| x as i32).collect(),
            },
            MonomialIdealSpec::SeparatedSum(l, r) => HoloFn::Sum(
                Box::new(function(l, offset)?),
                Box::new(function(r, offset + l.num_vars())?),
            ),
            other => {
                return Err(Error::invalid(format!(
                    "ssum operands must be functions (mono or ssum), got {other}"
                )))
            }
        })
    }

    weight(spec, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_matches_closed_form() {
        let phi = SampledPotential::monomial(&[2, 1]).unwrap();
        let pt = [0.3, -0.4, 0.1, 0.2];
        let expected = 2.0 * 0.5f64.ln() + (0.05f64).sqrt().ln();
        assert!((phi.eval(&pt) - expected).abs() < 1e-14);
    }

    #[test]
    fn spec_weights_agree_with_closed_forms() {
        let pt = [0.3, -0.4, 0.1, 0.2, -0.6, 0.05];
        let from_spec = SampledPotential::from_spec(&"mono:2,1".parse().unwrap()).unwrap();
        let direct = SampledPotential::monomial(&[2, 1]).unwrap();
        assert!((from_spec.eval(&pt[..4]) - direct.eval(&pt[..4])).abs() < 1e-12);

        let ssum = SampledPotential::from_spec(&"ssum(mono:2;mono:2)".parse().unwrap()).unwrap();
        let binom = SampledPotential::separated_binomial(2, 2, 1.0).unwrap();
        assert!((ssum.eval(&pt[..4]) - binom.eval(&pt[..4])).abs() < 1e-12);

        let diag = SampledPotential::from_spec(&"dsum(diag:2;mono:1,1)".parse().unwrap()).unwrap();
        assert_eq!(diag.dim(), 3);
        let r1 = 0.5f64;
        let r23 = (0.05f64).sqrt() * (0.6f64.hypot(0.05));
        assert!((diag.eval(&pt) - (2.0 * r1.ln()).max(r23.ln())).abs() < 1e-12);
    }

    #[test]
    fn ssum_of_ideal_is_rejected() {
        let spec = "ssum(diag:2;mono:1)".parse().unwrap();
        assert!(SampledPotential::from_spec(&spec).is_err());
    }

    #[test]
    fn domain_volume() {
        let phi = SampledPotential::constant(2, 0.0).unwrap();
        assert!((phi.domain_volume() - std::f64::consts::PI.powi(2)).abs() < 1e-12);
        let phi = phi.with_radius(0.5).unwrap();
        assert!((phi.domain_volume() - (std::f64::consts::PI * 0.25).powi(2)).abs() < 1e-12);
    }
}
