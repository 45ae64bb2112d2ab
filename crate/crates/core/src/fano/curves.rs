//! Curves in `X ∩ {x0 = 0}` with negative twisted normal degree.
//!
//! For a smooth rational curve `L ⊂ X` with cyclic quotient points of orders
//! `r_p`, adjunction gives `L² = -2 + Σ(1 - 1/r_p) + (k - d)·deg L`, where
//! `deg L = O(1)·L`. When `L² + t·deg L < 0` for the twist `t` of the
//! refined criterion, `L` lies in the base locus of every section of
//! `O(t)` restricted along `{x0 = 0}`, and the refined test is void.
//!
//! Only two shapes are recognised: coordinate lines `{x0 = xi = 0}` and
//! families of quasi-lines `{x0 = 0, xi^p = λ xj^q}` with `min(p, q) = 1`.
//! Anything else is reported as undetermined.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{Monomial, WeightSystem};
use crate::ext::serde_rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CurveShape {
    /// `{x0 = xi = 0}`.
    CoordinateLine { i: usize },
    /// `count` curves `{x0 = 0, xi^p = λ xj^q}`.
    QuasiLines {
        i: usize,
        j: usize,
        p: u64,
        q: u64,
        count: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCheck {
    pub shape: CurveShape,
    /// Orders of the two quotient points on the curve.
    pub isotropy: [u64; 2],
    #[serde(with = "serde_rational")]
    pub degree: BigRational,
    #[serde(with = "serde_rational")]
    pub self_intersection: BigRational,
    #[serde(with = "serde_rational")]
    pub twisted_degree: BigRational,
    pub obstructs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X0CurveAnalysis {
    pub twist: i128,
    pub curves: Vec<CurveCheck>,
    pub undetermined: Vec<String>,
    pub obstructed: bool,
}

impl X0CurveAnalysis {
    /// Neither an obstruction nor an unanalysed component was found.
    pub fn clear(&self) -> bool {
        !self.obstructed && self.undetermined.is_empty()
    }
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn make_check(
    w: &WeightSystem,
    twist: i128,
    shape: CurveShape,
    r: [u64; 2],
    degree: BigRational,
) -> CurveCheck {
    let index = w.weight_sum() as i128 - w.degree() as i128;
    let one = BigRational::one();
    let orbifold: BigRational = r
        .iter()
        .map(|&ri| &one - BigRational::new(1.into(), ri.into()))
        .fold(rat(0), |acc, x| acc + x);
    let self_intersection = rat(-2) + orbifold + rat(index) * &degree;
    let twisted_degree = &self_intersection + rat(twist) * &degree;
    CurveCheck {
        shape,
        isotropy: r,
        obstructs: twisted_degree.is_negative(),
        degree,
        self_intersection,
        twisted_degree,
    }
}

pub fn analyze_x0_curves(w: &WeightSystem, monomials: &[Monomial], twist: i128) -> X0CurveAnalysis {
    let a = w.weights();
    let free: Vec<&Monomial> = monomials.iter().filter(|m| m.exponent(0) == 0).collect();
    let mut curves = Vec::new();
    let mut undetermined = Vec::new();

    if free.is_empty() {
        undetermined.push("X contains the whole curve {x0 = 0}".to_string());
    }

    for i in 1..4 {
        if free.is_empty() || !free.iter().all(|m| m.exponent(i) >= 1) {
            continue;
        }
        let (j, l) = match i {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        let g = a[j].gcd(&a[l]);
        if g != 1 {
            undetermined.push(format!("line {{x0 = x{i} = 0}} has generic isotropy {g}"));
            continue;
        }
        let degree = BigRational::new(1.into(), (a[j] * a[l]).into());
        curves.push(make_check(
            w,
            twist,
            CurveShape::CoordinateLine { i },
            [a[j], a[l]],
            degree,
        ));
    }

    if free.len() >= 2 {
        // Strip the common coordinate factor; what remains cuts out the residual curve.
        let common: [u32; 4] =
            std::array::from_fn(|v| free.iter().map(|m| m.exponent(v)).min().unwrap_or(0));
        let reduced: Vec<[u32; 4]> = free
            .iter()
            .map(|m| std::array::from_fn(|v| m.exponent(v) - common[v]))
            .collect();
        let support: Vec<usize> = (1..4)
            .filter(|&v| reduced.iter().any(|e| e[v] > 0))
            .collect();
        if let [i, j] = support[..] {
            let l = (1..4).find(|v| !support.contains(v)).unwrap_or(3);
            let g = a[i].gcd(&a[j]);
            let (p, q) = (a[j] / g, a[i] / g);
            let e_max = reduced.iter().map(|e| u64::from(e[i])).max().unwrap_or(0);
            let count = e_max / p;
            if p.min(q) == 1 {
                let degree = BigRational::new(1.into(), (g * a[l]).into());
                let shape = CurveShape::QuasiLines { i, j, p, q, count };
                curves.push(make_check(w, twist, shape, [a[l], g], degree));
            } else {
                undetermined.push(format!(
                    "{count} curve(s) x{i}^{p} = λ x{j}^{q} in {{x0 = 0}} are singular at P{l}"
                ));
            }
        } else if support.len() == 3 {
            undetermined.push("residual curve in {x0 = 0} involves x1, x2, x3".to_string());
        }
    }

    let obstructed = curves.iter().any(|c| c.obstructs);
    X0CurveAnalysis {
        twist,
        curves,
        undetermined,
        obstructed,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{refined_twist, weighted_monomials};
    use super::*;

    fn analyze(a: [u64; 4], d: u64) -> X0CurveAnalysis {
        let w = WeightSystem::new(a, d).unwrap();
        analyze_x0_curves(&w, &weighted_monomials(&w), refined_twist(&w))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn retracted_system_has_negative_line() {
        let r = analyze([11, 29, 39, 49], 127);
        assert!(r.obstructed);
        let line = &r.curves[0];
        assert_eq!(line.shape, CurveShape::CoordinateLine { i: 3 });
        assert_eq!(line.self_intersection, q(-67, 1131));
        assert_eq!(line.twisted_degree, q(-8, 1131));
    }

    #[test]
    fn three_quasi_lines() {
        let r = analyze([9, 15, 23, 23], 69);
        assert!(r.obstructed);
        match &r.curves[0].shape {
            CurveShape::QuasiLines { count, .. } => assert_eq!(*count, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(r.curves[0].self_intersection, q(-37, 345));
        assert_eq!(r.curves[0].twisted_degree, q(-6, 345));
    }

    #[test]
    fn cuspidal_residual_is_undetermined() {
        let r = analyze([9, 15, 17, 20], 60);
        assert!(!r.obstructed);
        assert_eq!(r.undetermined.len(), 1);
        assert!(!r.clear());
    }
}
