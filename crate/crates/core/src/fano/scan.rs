use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certify::{certify_with, CertifyOptions, Verdict};
use super::fletcher::cond_i_holds;
use super::WeightSystem;
use crate::error::{Error, Result};
use crate::ext::{rational_to_f64, serde_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub max_a3: u64,
    /// `k - d`.
    pub fano_index: u64,
    pub min_a0: u64,
    /// Also certify through the refined criterion.
    pub require_refined: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_a3: 128,
            fano_index: 1,
            min_a0: 3,
            require_refined: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub weights: WeightSystem,
    pub fletcher: bool,
    #[serde(with = "serde_rational")]
    pub rho: BigRational,
    pub rho_float: f64,
    #[serde(with = "serde_rational")]
    pub rho_refined: BigRational,
    pub verdict: Verdict,
    pub monomial_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    /// Weight systems passing the arithmetic prefilter.
    pub candidates: u64,
    /// Fletcher-passing systems, sorted by ρ.
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn certified(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.verdict.is_certified())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = csv::Writer::from_writer(Vec::new());
        let header = [
            "a0",
            "a1",
            "a2",
            "a3",
            "d",
            "fletcher",
            "rho_num",
            "rho_den",
            "rho_float",
            "verdict",
        ];
        out.write_record(header).map_err(csv_err)?;
        for e in &self.entries {
            let [a0, a1, a2, a3] = e.weights.weights();
            out.write_record([
                a0.to_string(),
                a1.to_string(),
                a2.to_string(),
                a3.to_string(),
                e.weights.degree().to_string(),
                e.fletcher.to_string(),
                e.rho.numer().to_string(),
                e.rho.denom().to_string(),
                e.rho_float.to_string(),
                e.verdict.to_string(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = out
            .into_inner()
            .map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

/// Cheap necessary conditions: triple coprimality and condition (i).
fn prefilter(a: &[u64; 4], d: u64) -> bool {
    let coprime = |x: u64, y: u64, z: u64| x.gcd(&y).gcd(&z) == 1;
    coprime(a[0], a[1], a[2])
        && coprime(a[0], a[1], a[3])
        && coprime(a[0], a[2], a[3])
        && coprime(a[1], a[2], a[3])
        && cond_i_holds(a, d)
}

/// Enumerate `a0 ≤ a1 ≤ a2 ≤ a3 ≤ max_a3`, `a0 ≥ min_a0`, with
/// `d = k - fano_index`, and certify every Fletcher-passing system.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    if config.fano_index == 0 {
        return Err(Error::invalid("fano index must be at least 1"));
    }
    if config.min_a0 == 0 || config.min_a0 > config.max_a3 {
        return Err(Error::invalid("need 1 <= min_a0 <= max_a3"));
    }
    let options = CertifyOptions {
        refined: config.require_refined,
    };
    let pairs: Vec<(u64, u64)> = (config.min_a0..=config.max_a3)
        .flat_map(|a0| (a0..=config.max_a3).map(move |a1| (a0, a1)))
        .collect();

    let found: Vec<(u64, Vec<ScanEntry>)> = pairs
        .par_iter()
        .map(|&(a0, a1)| -> Result<(u64, Vec<ScanEntry>)> {
            let mut candidates = 0;
            let mut entries = Vec::new();
            for a2 in a1..=config.max_a3 {
                for a3 in a2..=config.max_a3 {
                    let k = a0 + a1 + a2 + a3;
                    if k <= config.fano_index {
                        continue;
                    }
                    let a = [a0, a1, a2, a3];
                    let d = k - config.fano_index;
                    if !prefilter(&a, d) {
                        continue;
                    }
                    candidates += 1;
                    let w = WeightSystem::new(a, d)?;
                    let cert = certify_with(&w, options)?;
                    if !cert.fletcher_pass {
                        continue;
                    }
                    let (Some(rho), Some(rho_refined)) = (cert.rho, cert.rho_refined) else {
                        return Err(Error::Internal(format!("{w} passed the filters without ρ")));
                    };
                    entries.push(ScanEntry {
                        weights: w,
                        fletcher: true,
                        rho_float: rational_to_f64(&rho),
                        rho,
                        rho_refined,
                        verdict: cert.verdict,
                        monomial_count: cert.monomial_count,
                    });
                }
            }
            Ok((candidates, entries))
        })
        .collect::<Result<_>>()?;

    let candidates = found.iter().map(|(c, _)| c).sum();
    let mut entries: Vec<ScanEntry> = found.into_iter().flat_map(|(_, e)| e).collect();
    entries.sort_by(|x, y| x.rho.cmp(&y.rho).then(x.weights.cmp(&y.weights)));
    Ok(ScanReport {
        config: *config,
        candidates,
        entries,
    })
}
