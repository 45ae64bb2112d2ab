use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights `a0 ≤ a1 ≤ a2 ≤ a3` of `P(a0, a1, a2, a3)` and a hypersurface degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWeights", into = "RawWeights")]
pub struct WeightSystem {
    a: [u64; 4],
    d: u64,
}

#[derive(Serialize, Deserialize)]
struct RawWeights {
    a: [u64; 4],
    d: u64,
}

impl TryFrom<RawWeights> for WeightSystem {
    type Error = Error;

    fn try_from(raw: RawWeights) -> Result<Self> {
        WeightSystem::new(raw.a, raw.d)
    }
}

impl From<WeightSystem> for RawWeights {
    fn from(w: WeightSystem) -> Self {
        RawWeights { a: w.a, d: w.d }
    }
}

impl WeightSystem {
    pub fn new(a: [u64; 4], d: u64) -> Result<Self> {
        if a.contains(&0) {
            return Err(Error::invalid(format!("weights {a:?} must be positive")));
        }
        if !a.windows(2).all(|p| p[0] <= p[1]) {
            return Err(Error::invalid(format!(
                "weights {a:?} must be ordered a0 <= a1 <= a2 <= a3"
            )));
        }
        if d == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        Ok(WeightSystem { a, d })
    }

    pub fn weights(&self) -> [u64; 4] {
        self.a
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.a[i]
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    /// `k = a0 + a1 + a2 + a3`.
    pub fn weight_sum(&self) -> u64 {
        self.a.iter().sum()
    }

    /// `k - d` when positive: `-K_X = O(k - d)` is then ample.
    pub fn fano_index(&self) -> Option<u64> {
        self.weight_sum().checked_sub(self.d).filter(|&i| i > 0)
    }

    pub(crate) fn require_fano(&self) -> Result<u64> {
        self.fano_index().ok_or(Error::NotFano {
            weight_sum: self.weight_sum(),
            degree: self.d,
        })
    }

    /// Triples `(i, j, l)` whose weights share a common factor.
    pub fn non_coprime_triples(&self) -> Vec<[usize; 3]> {
        let a = self.a;
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                for l in j + 1..4 {
                    if a[i].gcd(&a[j]).gcd(&a[l]) != 1 {
                        out.push([i, j, l]);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.a;
        write!(f, "P({a0},{a1},{a2},{a3}) d={}", self.d)
    }
}

/// Exponent vector of `x0^e0 x1^e1 x2^e2 x3^e3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self, w: &WeightSystem) -> u64 {
        self.0
            .iter()
            .zip(w.weights())
            .map(|(&e, a)| u64::from(e) * a)
            .sum()
    }

    pub fn total_exponent_except(&self, skip: &[usize]) -> u32 {
        (0..4)
            .filter(|i| !skip.contains(i))
            .map(|i| self.0[i])
            .sum()
    }

    /// Only the variables in `vars` occur.
    pub fn supported_on(&self, vars: &[usize]) -> bool {
        (0..4).all(|i| vars.contains(&i) || self.0[i] == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert!(WeightSystem::new([11, 49, 69, 128], 256).is_ok());
        assert!(WeightSystem::new([49, 11, 69, 128], 256).is_err());
        assert!(WeightSystem::new([0, 1, 1, 1], 2).is_err());
        assert!(WeightSystem::new([1, 1, 1, 1], 0).is_err());
    }

    #[test]
    fn fano_index() {
        let w = WeightSystem::new([11, 49, 69, 128], 256).unwrap();
        assert_eq!(w.weight_sum(), 257);
        assert_eq!(w.fano_index(), Some(1));
        let w = WeightSystem::new([1, 1, 1, 1], 4).unwrap();
        assert_eq!(w.fano_index(), None);
        assert!(matches!(
            w.require_fano(),
            Err(Error::NotFano {
                weight_sum: 4,
                degree: 4
            })
        ));
    }

    #[test]
    fn triple_coprimality() {
        assert!(WeightSystem::new([9, 15, 17, 20], 60)
            .unwrap()
            .non_coprime_triples()
            .is_empty());
        assert_eq!(
            WeightSystem::new([2, 4, 6, 7], 12)
                .unwrap()
                .non_coprime_triples(),
            vec![[0, 1, 2]]
        );
    }

    #[test]
    fn monomial_display() {
        assert_eq!(Monomial([17, 0, 1, 0]).to_string(), "x0^17 x2");
        assert_eq!(Monomial([0, 0, 0, 0]).to_string(), "1");
    }

    #[test]
    fn serde_validates() {
        let w: WeightSystem = serde_json::from_str(r#"{"a":[9,15,17,20],"d":60}"#).unwrap();
        assert_eq!(w.degree(), 60);
        assert!(serde_json::from_str::<WeightSystem>(r#"{"a":[15,9,17,20],"d":60}"#).is_err());
    }
}
