use serde::{Deserialize, Serialize};

use super::{fit_exponent, FitConfig, SampledPotential};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemicontinuityEntry {
    pub t: f64,
    pub fitted_c: f64,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemicontinuityReport {
    pub baseline_c: f64,
    pub tolerance: f64,
    pub entries: Vec<SemicontinuityEntry>,
    pub violations: usize,
}

/// Fits the exponent of `φ_t` for every `t` and flags any `t` whose fitted
/// exponent drops below `c(0) - tolerance`: lower semicontinuity says the
/// exponent can only jump up away from the special fibre.
///
/// Every member is fitted with the same seed, so the family shares one
/// sample set.
pub fn semicontinuity_experiment<F>(
    family: F,
    t_values: &[f64],
    config: &FitConfig,
    tolerance: f64,
) -> Result<SemicontinuityReport>
where
    F: Fn(f64) -> Result<SampledPotential>,
{
    if !t_values.contains(&0.0) {
        return Err(Error::invalid("parameter values must include t = 0"));
    }
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(Error::invalid(format!(
            "tolerance {tolerance} must be >= 0"
        )));
    }
    let fits = t_values
        .iter()
        .map(|&t| fit_exponent(&family(t)?, config).map(|f| (t, f.fitted_c)))
        .collect::<Result<Vec<_>>>()?;
    let baseline_c = fits
        .iter()
        .find(|(t, _)| *t == 0.0)
        .map(|&(_, c)| c)
        .expect("t = 0 is present");
    let entries: Vec<SemicontinuityEntry> = fits
        .into_iter()
        .map(|(t, fitted_c)| SemicontinuityEntry {
            t,
            fitted_c,
            violation: fitted_c < baseline_c - tolerance,
        })
        .collect();
    let violations = entries.iter().filter(|e| e.violation).count();
    Ok(SemicontinuityReport {
        baseline_c,
        tolerance,
        entries,
        violations,
    })
}
