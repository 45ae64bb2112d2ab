use serde::{Deserialize, Serialize};

use super::sampler::sublevel_counts;
use super::SampledPotential;
use crate::error::{Error, Result};

/// Seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_0000_0001;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub grid_size: usize,
    pub samples: u64,
    pub seed: u64,
    pub log_correction: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            r_min: 1e-3,
            r_max: 1e-1,
            grid_size: 12,
            samples: 1_000_000,
            seed: DEFAULT_SEED,
            log_correction: false,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max < 1.0) {
            return Err(Error::invalid(format!(
                "radius range must satisfy 0 < rmin < rmax < 1 (got {} .. {})",
                self.r_min, self.r_max
            )));
        }
        if self.grid_size < 4 {
            return Err(Error::invalid(format!(
                "grid size {} must be >= 4",
                self.grid_size
            )));
        }
        check_samples(self.samples)
    }

    /// Geometric grid from `r_max` down to `r_min`, strictly decreasing.
    pub fn radii(&self) -> Vec<f64> {
        let (lo, hi) = (self.r_min.ln(), self.r_max.ln());
        let steps = (self.grid_size - 1) as f64;
        (0..self.grid_size)
            .map(|i| match i {
                0 => self.r_max,
                i if i == self.grid_size - 1 => self.r_min,
                i => (hi + (lo - hi) * i as f64 / steps).exp(),
            })
            .collect()
    }
}

pub(crate) fn check_samples(samples: u64) -> Result<()> {
    if samples < 1000 {
        return Err(Error::invalid(format!(
            "samples = {samples} must be >= 1000"
        )));
    }
    Ok(())
}

/// Estimated `μ({φ < log r})` with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeEstimate {
    pub volume: f64,
    pub std_error: f64,
    pub hits: u64,
    pub samples: u64,
}

impl VolumeEstimate {
    fn from_counts(hits: u64, samples: u64, domain_volume: f64) -> Self {
        let p = hits as f64 / samples as f64;
        VolumeEstimate {
            volume: domain_volume * p,
            std_error: domain_volume * (p * (1.0 - p) / samples as f64).sqrt(),
            hits,
            samples,
        }
    }
}

/// Fraction of uniform polydisk samples with `φ < log r`, scaled by the
/// polydisk volume. Deterministic for a fixed seed.
pub fn estimate_sublevel_volume(
    potential: &SampledPotential,
    r: f64,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid(format!("radius {r} must lie in (0, 1)")));
    }
    check_samples(samples)?;
    let hits = sublevel_counts(potential, &[r.ln()], samples, seed)[0];
    Ok(VolumeEstimate::from_counts(
        hits,
        samples,
        potential.domain_volume(),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub r: f64,
    pub volume: f64,
    pub std_error: f64,
    pub hits: u64,
    pub used_in_fit: bool,
}

/// Result of regressing `log μ(r)` on `log r`.
///
/// With log correction the model is
/// `log μ = A + 2c·log r + log(1 + κ·|log r|^(n-1))`, `κ ∈ [0, ∞]`;
/// `κ = ∞` is the pure `(n-1)·log log(1/r)` term. `log_mix = κ/(1+κ)` keeps
/// the value finite for serialization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub potential: String,
    pub dimension: usize,
    pub samples: u64,
    pub seed: u64,
    pub log_correction: bool,
    pub points: Vec<FitPoint>,
    pub fitted_c: f64,
    pub intercept: f64,
    pub fitted_log_power: Option<f64>,
    pub log_mix: Option<f64>,
    pub r_squared: f64,
}

impl ExponentFit {
    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.r)
    }

    /// Radii dropped from the regression because no sample fell below them.
    pub fn excluded_radii(&self) -> Vec<f64> {
        self.points
            .iter()
            .filter(|p| !p.used_in_fit)
            .map(|p| p.r)
            .collect()
    }

    /// Constants of the finite-range envelope
    /// `lower·r^(2c_high) ≤ μ(r) ≤ upper·r^(2c_low)` over the fitted points.
    pub fn envelope(&self, c_low: f64, c_high: f64) -> Envelope {
        let used = self.points.iter().filter(|p| p.used_in_fit);
        let mut env = Envelope {
            upper: f64::NEG_INFINITY,
            upper_at_r: f64::NAN,
            lower: f64::INFINITY,
            lower_at_r: f64::NAN,
        };
        for p in used {
            let up = p.volume / p.r.powf(2.0 * c_low);
            let lo = p.volume / p.r.powf(2.0 * c_high);
            if up > env.upper {
                env.upper = up;
                env.upper_at_r = p.r;
            }
            if lo < env.lower {
                env.lower = lo;
                env.lower_at_r = p.r;
            }
        }
        env
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(format!("csv: {e}"));
        w.write_record(["r", "volume", "std_error", "used_in_fit"])
            .map_err(io)?;
        for p in &self.points {
            w.write_record([
                p.r.to_string(),
                p.volume.to_string(),
                p.std_error.to_string(),
                p.used_in_fit.to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Internal(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub upper: f64,
    pub upper_at_r: f64,
    pub lower: f64,
    pub lower_at_r: f64,
}

/// Fits the growth exponent `c` of `μ({φ < log r}) ≈ C r^{2c}` over a
/// geometric radius grid, reusing one sample set for every radius.
pub fn fit_exponent(potential: &SampledPotential, config: &FitConfig) -> Result<ExponentFit> {
    config.validate()?;
    let radii = config.radii();
    let log_radii: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let counts = sublevel_counts(potential, &log_radii, config.samples, config.seed);
    let domain = potential.domain_volume();

    let points: Vec<FitPoint> = radii
        .iter()
        .zip(&counts)
        .map(|(&r, &hits)| {
            let est = VolumeEstimate::from_counts(hits, config.samples, domain);
            FitPoint {
                r,
                volume: est.volume,
                std_error: est.std_error,
                hits,
                used_in_fit: hits > 0,
            }
        })
        .collect();

    let data: Vec<Obs> = points
        .iter()
        .filter(|p| p.used_in_fit)
        .map(|p| Obs {
            x: p.r.ln(),
            y: p.volume.ln(),
            w: p.hits as f64,
        })
        .collect();
    if data.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "only {} of {} radii have a nonzero volume estimate (need 3)",
            data.len(),
            radii.len()
        )));
    }

    let log_power = (potential.dim() - 1) as f64;
    let best = if config.log_correction {
        kappa_grid()
            .map(|kappa| weighted_line(&data, |x| log_factor(kappa, log_power, x), kappa))
            .reduce(|best, cand| if cand.sse < best.sse { cand } else { best })
            .expect("kappa grid is nonempty")
    } else {
        weighted_line(&data, |_| 0.0, 0.0)
    };

    let (fitted_log_power, log_mix) = if config.log_correction {
        let mid = -(config.r_min * config.r_max).sqrt().ln();
        let power = match best.kappa {
            k if k.is_infinite() => log_power,
            k => {
                let s = k * mid.powf(log_power);
                log_power * s / (1.0 + s)
            }
        };
        let mix = if best.kappa.is_infinite() {
            1.0
        } else {
            best.kappa / (1.0 + best.kappa)
        };
        (Some(power), Some(mix))
    } else {
        (None, None)
    };

    Ok(ExponentFit {
        potential: potential.label().to_string(),
        dimension: potential.dim(),
        samples: config.samples,
        seed: config.seed,
        log_correction: config.log_correction,
        points,
        fitted_c: best.slope / 2.0,
        intercept: best.intercept,
        fitted_log_power,
        log_mix,
        r_squared: best.r_squared,
    })
}

struct Obs {
    x: f64,
    y: f64,
    w: f64,
}

struct LineFit {
    slope: f64,
    intercept: f64,
    sse: f64,
    r_squared: f64,
    kappa: f64,
}

/// `log(1 + κ L^p)` with `L = -x = log(1/r)`; `κ = ∞` gives `p·log L`.
fn log_factor(kappa: f64, power: f64, x: f64) -> f64 {
    let l = -x;
    if kappa.is_infinite() {
        power * l.ln()
    } else {
        (kappa * l.powf(power)).ln_1p()
    }
}

fn kappa_grid() -> impl Iterator<Item = f64> {
    const STEPS: i32 = 80;
    std::iter::once(0.0)
        .chain((0..=STEPS).map(|i| 10f64.powf(-2.0 + 4.0 * f64::from(i) / f64::from(STEPS))))
        .chain(std::iter::once(f64::INFINITY))
}

/// Weighted least squares of `y - offset(x)` on `x`.
fn weighted_line(data: &[Obs], offset: impl Fn(f64) -> f64, kappa: f64) -> LineFit {
    let sw: f64 = data.iter().map(|o| o.w).sum();
    let target = |o: &Obs| o.y - offset(o.x);
    let mx = data.iter().map(|o| o.w * o.x).sum::<f64>() / sw;
    let my = data.iter().map(|o| o.w * target(o)).sum::<f64>() / sw;
    let sxx: f64 = data.iter().map(|o| o.w * (o.x - mx).powi(2)).sum();
    let sxy: f64 = data
        .iter()
        .map(|o| o.w * (o.x - mx) * (target(o) - my))
        .sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;

    let sse: f64 = data
        .iter()
        .map(|o| o.w * (target(o) - intercept - slope * o.x).powi(2))
        .sum();
    let ybar = data.iter().map(|o| o.w * o.y).sum::<f64>() / sw;
    let sst: f64 = data.iter().map(|o| o.w * (o.y - ybar).powi(2)).sum();
    let r_squared = if sst > 0.0 { 1.0 - sse / sst } else { 1.0 };
    LineFit {
        slope,
        intercept,
        sse,
        r_squared,
        kappa,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_grid_is_geometric_and_decreasing() {
        let cfg = FitConfig::default();
        let radii = cfg.radii();
        assert_eq!(radii.len(), 12);
        assert_eq!(radii[0], 0.1);
        assert_eq!(radii[11], 1e-3);
        assert!(radii.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0));
        let ratios: Vec<f64> = radii.windows(2).map(|w| w[0] / w[1]).collect();
        assert!(ratios.iter().all(|r| (r - ratios[0]).abs() < 1e-9));
    }

    #[test]
    fn config_validation() {
        let bad = |f: fn(&mut FitConfig)| {
            let mut c = FitConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.r_min = 0.0));
        assert!(bad(|c| c.r_max = 1.0));
        assert!(bad(|c| c.r_min = c.r_max));
        assert!(bad(|c| c.grid_size = 3));
        assert!(bad(|c| c.samples = 999));
        assert!(FitConfig::default().validate().is_ok());
    }

    #[test]
    fn weighted_line_recovers_exact_line() {
        let data: Vec<Obs> = (1..6)
            .map(|i| {
                let x = -(i as f64);
                Obs {
                    x,
                    y: 0.7 + 1.5 * x,
                    w: i as f64,
                }
            })
            .collect();
        let fit = weighted_line(&data, |_| 0.0, 0.0);
        assert!((fit.slope - 1.5).abs() < 1e-12);
        assert!((fit.intercept - 0.7).abs() < 1e-12);
        assert!(fit.sse < 1e-20);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_corrected_model_is_recovered_from_exact_data() {
        // μ = r²(1 + log(1/r)): c = 1, κ = 1 (a grid point).
        let data: Vec<Obs> = FitConfig::default()
            .radii()
            .into_iter()
            .map(|r: f64| Obs {
                x: r.ln(),
                y: (r * r * (1.0 + (1.0 / r).ln())).ln(),
                w: 1.0,
            })
            .collect();
        let best = kappa_grid()
            .map(|k| weighted_line(&data, |x| log_factor(k, 1.0, x), k))
            .reduce(|a, b| if b.sse < a.sse { b } else { a })
            .unwrap();
        assert!((best.kappa - 1.0).abs() < 1e-9, "kappa {}", best.kappa);
        assert!((best.slope / 2.0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn csv_has_documented_columns() {
        let fit = ExponentFit {
            potential: "mono:1".into(),
            dimension: 1,
            samples: 1000,
            seed: 1,
            log_correction: false,
            points: vec![FitPoint {
                r: 0.1,
                volume: 0.03,
                std_error: 0.001,
                hits: 10,
                used_in_fit: true,
            }],
            fitted_c: 1.0,
            intercept: 0.0,
            fitted_log_power: None,
            log_mix: None,
            r_squared: 1.0,
        };
        let csv = fit.to_csv().unwrap();
        assert_eq!(
            csv.lines().next().unwrap(),
            "r,volume,std_error,used_in_fit"
        );
        assert_eq!(csv.lines().nth(1).unwrap(), "0.1,0.03,0.001,true");
    }
}
