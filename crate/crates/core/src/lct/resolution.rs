//! Log-resolution data: one record per prime divisor `E_i` of the resolution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime divisor of a log resolution `μ: X̃ → X`.
///
/// `a` is the coefficient of `E_i` in `K_X̃ - μ*K_X`, `b` its coefficient in the
/// pulled-back ideal `μ*I = O(-Σ b_i E_i)`, and `meets_k` records whether
/// `μ(E_i)` meets the compact set `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorRecord {
    pub a: u64,
    pub b: u64,
    pub meets_k: bool,
}

impl DivisorRecord {
    pub fn new(a: u64, b: u64, meets_k: bool) -> Self {
        DivisorRecord { a, b, meets_k }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub divisors: Vec<DivisorRecord>,
}

impl ResolutionData {
    pub fn new(divisors: Vec<DivisorRecord>) -> Result<Self> {
        let data = ResolutionData { divisors };
        data.validate()?;
        Ok(data)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: ResolutionData = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("resolution JSON: {e}")))?;
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<()> {
        if self.divisors.is_empty() {
            return Err(Error::invalid("resolution data has no divisor records"));
        }
        if let Some(i) = self.divisors.iter().position(|d| d.a == 0 && d.b == 0) {
            return Err(Error::invalid(format!(
                "divisor record {i} has a = 0 and b = 0 and carries no information"
            )));
        }
        Ok(())
    }
}
