use std::fmt::Write as _;

use lctkit::bergman::{build_approx, BergmanReport, RadialWeight};
use lctkit::ext::{parse_rational, rational_to_decimal};
use lctkit::fano::{
    certify, scan, weighted_monomials, Certificate, Monomial, ScanConfig, ScanReport, WeightSystem,
};
use lctkit::lct::{
    arnold_multiplicity, lct_from_resolution, lct_monomial, MonomialIdealSpec, ResolutionData,
};
use lctkit::volume::{
    fit_exponent, semicontinuity_experiment, ExponentFit, FitConfig, SampledPotential,
    SemicontinuityReport, DEFAULT_SEED,
};
use lctkit::ExtRational;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::output::{csv_table, Rendered};
use crate::CliError;
use crate::{
    BergmanArgs, Cli, Command, FanoCommand, FitArgs, LctArgs, ScanArgs, SemicontinuityArgs,
    VolumeFitArgs, WeightArgs,
};

pub fn dispatch(cli: &Cli, cfg: &Config) -> Result<Rendered, CliError> {
    let seed = cfg.pick(cli.seed, "seed")?.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Lct(args) => lct(args, cfg),
        Command::VolumeFit(args) => volume_fit(args, cfg, seed),
        Command::Semicontinuity(args) => semicontinuity(args, cfg, seed),
        Command::Bergman(args) => bergman(args, cfg),
        Command::Fano(FanoCommand::Certify(args)) | Command::FanoCertify(args) => {
            fano_certify(args, cfg)
        }
        Command::Fano(FanoCommand::Monomials(args)) | Command::FanoMonomials(args) => {
            fano_monomials(args, cfg)
        }
        Command::Fano(FanoCommand::Scan(args)) | Command::FanoScan(args) => fano_scan(args, cfg),
    }
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required --{flag}")))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LctOutput {
    pub c: ExtRational,
    pub lambda: ExtRational,
}

fn lct(args: &LctArgs, cfg: &Config) -> Result<Rendered, CliError> {
    let spec: Option<String> = cfg.pick(args.spec.clone(), "spec")?;
    let resolution: Option<std::path::PathBuf> = cfg.pick(args.resolution.clone(), "resolution")?;
    let c = match (spec, resolution) {
        (Some(s), None) => lct_monomial(&s.parse::<MonomialIdealSpec>()?)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            lct_from_resolution(&ResolutionData::from_json(&text)?)?
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --spec or --resolution, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "missing required --spec or --resolution".into(),
            ))
        }
    };
    let out = LctOutput {
        lambda: arnold_multiplicity(&c)?,
        c,
    };
    let csv = csv_table(
        &["c", "lambda"],
        [[out.c.to_string(), out.lambda.to_string()]],
    )?;
    let text = format!(
        "c      = {} (~{})\nlambda = {} (~{})",
        out.c,
        out.c.to_decimal_string(6),
        out.lambda,
        out.lambda.to_decimal_string(6)
    );
    Rendered::new(&out, csv, text)
}

fn fit_config(args: &FitArgs, cfg: &Config, seed: u64) -> Result<FitConfig, CliError> {
    let base = FitConfig::default();
    let config = FitConfig {
        r_min: cfg.pick(args.rmin, "rmin")?.unwrap_or(base.r_min),
        r_max: cfg.pick(args.rmax, "rmax")?.unwrap_or(base.r_max),
        grid_size: cfg.pick(args.grid, "grid")?.unwrap_or(base.grid_size),
        samples: cfg.pick(args.samples, "samples")?.unwrap_or(base.samples),
        seed,
        log_correction: cfg.pick_flag(args.log_correction, "log-correction")?,
    };
    config.validate()?;
    Ok(config)
}

fn fit_text(fit: &ExponentFit) -> String {
    let mut s = format!(
        "potential  {}\nfitted_c   {:.6}\nr_squared  {:.6}\n",
        fit.potential, fit.fitted_c, fit.r_squared
    );
    if let Some(mix) = fit.log_mix {
        let _ = writeln!(s, "log_mix    {mix:.4}");
    }
    let _ = writeln!(s, "{:>12} {:>14} {:>12}  used", "r", "volume", "std_error");
    for p in &fit.points {
        let _ = writeln!(
            s,
            "{:>12.6e} {:>14.6e} {:>12.3e}  {}",
            p.r, p.volume, p.std_error, p.used_in_fit
        );
    }
    s
}

fn volume_fit(args: &VolumeFitArgs, cfg: &Config, seed: u64) -> Result<Rendered, CliError> {
    let spec: MonomialIdealSpec =
        required(cfg.pick(args.potential.clone(), "potential")?, "potential")?.parse()?;
    let config = fit_config(&args.fit, cfg, seed)?;
    let fit = fit_exponent(&SampledPotential::from_spec(&spec)?, &config)?;
    Rendered::new(&fit, fit.to_csv()?, fit_text(&fit))
}

fn semicontinuity(
    args: &SemicontinuityArgs,
    cfg: &Config,
    seed: u64,
) -> Result<Rendered, CliError> {
    let m = cfg.pick(args.m, "m")?.unwrap_or(2);
    let p = cfg.pick(args.p, "p")?.unwrap_or(2);
    let t = cfg
        .pick_list(args.t.clone(), "t")?
        .unwrap_or_else(|| vec![0.0, 0.1, 1.0]);
    let tolerance = cfg.pick(args.tolerance, "tolerance")?.unwrap_or(0.05);
    let config = fit_config(&args.fit, cfg, seed)?;
    let report: SemicontinuityReport = semicontinuity_experiment(
        |t| SampledPotential::separated_binomial(m, p, t),
        &t,
        &config,
        tolerance,
    )?;
    let csv = csv_table(
        &["t", "fitted_c", "violation"],
        report.entries.iter().map(|e| {
            [
                e.t.to_string(),
                e.fitted_c.to_string(),
                e.violation.to_string(),
            ]
        }),
    )?;
    let mut text = format!("family log|z1^{m} + t z2^{p}|, tolerance {tolerance}\n");
    for e in &report.entries {
        let flag = if e.violation { "  VIOLATION" } else { "" };
        let _ = writeln!(text, "t = {:<8} fitted_c = {:.4}{flag}", e.t, e.fitted_c);
    }
    let _ = write!(text, "violations: {}", report.violations);
    Rendered::new(&report, csv, text)
}

fn bergman(args: &BergmanArgs, cfg: &Config) -> Result<Rendered, CliError> {
    let c = parse_rational(&required(cfg.pick(args.c.clone(), "c")?, "c")?)?;
    let m = required(cfg.pick(args.m, "m")?, "m")?;
    let kmax = cfg.pick(args.kmax, "kmax")?;
    let eval = cfg.pick(args.eval, "eval")?;
    let approx = build_approx(&RadialWeight::new(c)?, m, kmax)?;
    let report: BergmanReport = approx.report(eval)?;
    let point = report.evaluation.as_ref();
    let opt = |v: Option<String>| v.unwrap_or_default();
    let csv = csv_table(
        &[
            "c",
            "m",
            "mc",
            "k_min",
            "k_max",
            "lelong_psi_m",
            "lelong_sandwich_ok",
            "z_abs",
            "psi_m",
            "lower_bound",
            "lower_bound_ok",
        ],
        [[
            report.c.to_string(),
            report.m.to_string(),
            report.mc.to_string(),
            report.k_min.to_string(),
            report.k_max.to_string(),
            report.lelong_psi_m.to_string(),
            report.lelong_sandwich_ok.to_string(),
            opt(point.map(|p| p.z_abs.to_string())),
            opt(point.map(|p| p.psi_m.to_string())),
            opt(point.map(|p| p.lower_bound.to_string())),
            opt(point.map(|p| p.lower_bound_ok.to_string())),
        ]],
    )?;
    let mut text = format!(
        "c = {}, m = {}, mc = {}\nk_min = {}, k_max = {}\nlelong(psi_m) = {}  sandwich ok: {}",
        report.c,
        report.m,
        report.mc,
        report.k_min,
        report.k_max,
        report.lelong_psi_m,
        report.lelong_sandwich_ok
    );
    if let Some(p) = point {
        let _ = write!(
            text,
            "\npsi_m({}) = {:.9} (tail <= {:.2e})\nlower bound {:.9}  ok: {}",
            p.z_abs, p.psi_m, p.truncation_bound, p.lower_bound, p.lower_bound_ok
        );
    }
    Rendered::new(&report, csv, text)
}

fn weight_system(args: &WeightArgs, cfg: &Config) -> Result<WeightSystem, CliError> {
    let weights = required(cfg.pick_list(args.weights.clone(), "weights")?, "weights")?;
    let a: [u64; 4] = weights.try_into().map_err(|w: Vec<u64>| {
        CliError::Core(lctkit::Error::InvalidInput(format!(
            "expected 4 weights, got {}",
            w.len()
        )))
    })?;
    let d = required(cfg.pick(args.degree, "degree")?, "degree")?;
    Ok(WeightSystem::new(a, d)?)
}

fn scan_row(
    w: &WeightSystem,
    fletcher: bool,
    rho: Option<&num_rational::BigRational>,
    verdict: &str,
) -> Vec<String> {
    let [a0, a1, a2, a3] = w.weights();
    let (num, den, float) = match rho {
        Some(r) => (
            r.numer().to_string(),
            r.denom().to_string(),
            rational_to_decimal(r, 6),
        ),
        None => Default::default(),
    };
    vec![
        a0.to_string(),
        a1.to_string(),
        a2.to_string(),
        a3.to_string(),
        w.degree().to_string(),
        fletcher.to_string(),
        num,
        den,
        float,
        verdict.to_string(),
    ]
}

const SCAN_COLUMNS: [&str; 10] = [
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

fn certificate_text(c: &Certificate) -> String {
    let mut s = format!("{}\nverdict: {}", c.weights, c.verdict);
    if c.refined_caveat {
        s.push_str(" (curves in {x0 = 0} only partly checked)");
    }
    let _ = write!(s, "\nmonomials ({}): ", c.monomial_count);
    s.push_str(
        &c.monomials
            .iter()
            .map(Monomial::to_string)
            .collect::<Vec<_>>()
            .join(" + "),
    );
    let _ = write!(
        s,
        "\nrigid: {}\norbifold conditions: {}",
        c.rigid, c.fletcher_pass
    );
    if let Some(q) = &c.anticanonical_square {
        let _ = write!(s, "\n(-K)^2 = {q}");
    }
    if let Some(ok) = c.curve_bound_ok {
        let _ = write!(s, "\ncurve bound: {ok}");
    }
    if let (Some(r), Some(rr)) = (&c.rho, &c.rho_refined) {
        let _ = write!(
            s,
            "\nrho = {r} ~ {}\nrho_refined = {rr} ~ {}",
            rational_to_decimal(r, 6),
            rational_to_decimal(rr, 6)
        );
    }
    s
}

fn fano_certify(args: &WeightArgs, cfg: &Config) -> Result<Rendered, CliError> {
    let w = weight_system(args, cfg)?;
    let cert = certify(&w)?;
    let csv = csv_table(
        &SCAN_COLUMNS,
        [scan_row(
            &w,
            cert.fletcher_pass,
            cert.rho.as_ref(),
            cert.verdict.as_str(),
        )],
    )?;
    Rendered::new(&cert, csv, certificate_text(&cert))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MonomialList {
    pub weights: WeightSystem,
    pub count: usize,
    pub monomials: Vec<Monomial>,
    pub terms: Vec<String>,
}

fn fano_monomials(args: &WeightArgs, cfg: &Config) -> Result<Rendered, CliError> {
    let w = weight_system(args, cfg)?;
    let monomials = weighted_monomials(&w);
    let terms: Vec<String> = monomials.iter().map(Monomial::to_string).collect();
    let csv = csv_table(
        &["e0", "e1", "e2", "e3", "term"],
        monomials.iter().zip(&terms).map(|(m, t)| {
            let mut row: Vec<String> = m.0.iter().map(u32::to_string).collect();
            row.push(t.clone());
            row
        }),
    )?;
    let text = format!("{w}: {} monomial(s)\n{}", monomials.len(), terms.join("\n"));
    let out = MonomialList {
        weights: w,
        count: monomials.len(),
        monomials,
        terms,
    };
    Rendered::new(&out, csv, text)
}

fn fano_scan(args: &ScanArgs, cfg: &Config) -> Result<Rendered, CliError> {
    let base = ScanConfig::default();
    let config = ScanConfig {
        max_a3: cfg
            .pick(args.max_weight, "max-weight")?
            .unwrap_or(base.max_a3),
        fano_index: cfg.pick(args.index, "index")?.unwrap_or(base.fano_index),
        min_a0: cfg.pick(args.min_a0, "min-a0")?.unwrap_or(base.min_a0),
        require_refined: cfg.pick_flag(args.refined, "refined")?,
    };
    let report: ScanReport = scan(&config)?;
    let mut text = format!(
        "box a3 <= {}, k - d = {}, a0 >= {}: {} candidates, {} orbifold systems\n",
        config.max_a3,
        config.fano_index,
        config.min_a0,
        report.candidates,
        report.entries.len()
    );
    for e in &report.entries {
        let _ = writeln!(
            text,
            "{:<32} rho ~ {}  {}",
            e.weights.to_string(),
            rational_to_decimal(&e.rho, 6),
            e.verdict
        );
    }
    Rendered::new(&report, report.to_csv()?, text)
}
