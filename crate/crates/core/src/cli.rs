//! Command-line front end. Every subcommand prints JSON to stdout; CSV and
//! SVG outputs are opt-in. Exit codes: 0 success, 2 invalid input or domain
//! error, 3 resource or tolerance failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::arithmetic::{
    field_distance, field_distance_euler, primorial_experiment, FieldDistanceConfig, NumberField,
    DEFAULT_DISCRIMINANT_CAP,
};
use crate::convergence::{family_report, perron_sum, PerronConfig, ReportConfig, SeriesFamily};
use crate::error::{Error, Result};
use crate::metric::{bounded, manifold_distance, MetricConfig};
use crate::plot::{emit_svg, Labels};
use crate::series::GeneralDirichletSeries;
use crate::spectra::{spectrum_to_series, CatalogSpec, Spectrum};
use crate::stieltjes::{
    lip_norm_estimate, step_from_series, wid_norm_estimate, DiagnosticConfig, LipConfig, NormEstimate,
    SeriesTransform,
};

/// Stored-length cap when `ZM_MAX_TERMS` is unset.
pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "zetametric", version, about = "Dirichlet-series distances and convergence diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a series (or one of its derivatives) at s.
    Eval(EvalArgs),
    /// Describe a spectrum and optionally evaluate its zeta function.
    Spectrum(SpectrumArgs),
    /// Zeta-ratio distance between two spectra.
    DistanceManifold(ManifoldArgs),
    /// Zeta-ratio distance between two number fields.
    DistanceField(FieldArgs),
    /// Convergence report for a family of series.
    Converge(ConvergeArgs),
    /// Coefficient partial sum by Perron's formula.
    Perron(PerronArgs),
    /// L(χ_D, 1) for primorial D.
    Primorial(PrimorialArgs),
    /// Lip and Wid norm estimates for a real-coefficient series.
    StieltjesNorms(NormArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub series: PathBuf,
    /// Real part of s.
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Imaginary part of s.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Derivative order.
    #[arg(long, default_value_t = 0)]
    pub derivative: u32,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Spectrum JSON file or catalog reference such as catalog:circle:r=0.5.
    #[arg(long)]
    pub spec: String,
    /// Evaluate the spectral zeta function at this real s.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Number of leading eigenvalues to print.
    #[arg(long, default_value_t = 10)]
    pub head: usize,
    /// Write the spectrum as JSON to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ManifoldArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    /// Left end of the search interval (default max(1, dim/2)).
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 129)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// CSV of the grid samples: s, log_ratio.
    #[arg(long)]
    pub emit_samples: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    /// The search runs over [1 + guard, 1 + a].
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub guard: f64,
    #[arg(long, default_value_t = 129)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Use truncated Euler products over p ≤ this bound (needs guard > 0).
    #[arg(long)]
    pub prime_bound: Option<u64>,
    #[arg(long)]
    pub emit_samples: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub family: PathBuf,
    /// Overrides the family's gamma.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Comma-separated real evaluation points.
    #[arg(long, default_value = "1.5,2,3")]
    pub grid: String,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Also write the report to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PerronArgs {
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Truncation height.
    #[arg(long = "T", default_value_t = 1e4)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub quad_tol: f64,
}

#[derive(Debug, Args)]
pub struct PrimorialArgs {
    #[arg(long, default_value_t = 6)]
    pub imax: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Largest discriminant attempted.
    #[arg(long, default_value_t = DEFAULT_DISCRIMINANT_CAP)]
    pub cap: u64,
    /// CSV columns: i, D_i, discriminant, L_value, error_bound.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Scatter of L_value against i.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long)]
    pub series: PathBuf,
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 60)]
    pub kmax: u32,
    #[arg(long, default_value_t = 1e-6)]
    pub delta_min: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Total pair budget for the Lip estimate.
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    /// Added to every exponent before forming the step function.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<f64>,
}

fn max_terms() -> Result<usize> {
    match std::env::var("ZM_MAX_TERMS") {
        Err(_) => Ok(DEFAULT_MAX_TERMS),
        Ok(v) => v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|n| *n >= 1.0 && n.is_finite())
            .map(|n| n as usize)
            .ok_or_else(|| Error::invalid(format!("ZM_MAX_TERMS={v:?} is not a positive count"))),
    }
}

fn check_len(what: &str, len: usize) -> Result<()> {
    let cap = max_terms()?;
    if len > cap {
        return Err(Error::resource(
            format!("{what} stores {len} terms, above ZM_MAX_TERMS = {cap}"),
            len as f64,
        ));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Json(j) => Error::invalid(format!("{}: {j}", path.display())),
        other => other,
    })
}

fn load_series(path: &Path) -> Result<GeneralDirichletSeries> {
    let d = with_path(path, GeneralDirichletSeries::from_json_str(&read(path)?))?;
    check_len(&path.display().to_string(), d.len())?;
    Ok(d)
}

fn load_spectrum(spec: &str) -> Result<Spectrum> {
    if spec.starts_with("catalog:") {
        let c: CatalogSpec = spec.parse()?;
        check_len(spec, c.count)?;
        return c.build();
    }
    let path = Path::new(spec);
    let sp = with_path(path, Spectrum::from_json_str(&read(path)?))?;
    check_len(spec, sp.len())?;
    Ok(sp)
}

fn write_samples(path: &Path, header: &str, samples: &[(f64, f64)]) -> Result<()> {
    let mut text = format!("{header}\n");
    for (s, v) in samples {
        let _ = writeln!(text, "{s},{v}");
    }
    std::fs::write(path, text)?;
    Ok(())
}

fn norm_json(e: &NormEstimate) -> Value {
    json!({
        "value": e.value,
        "saturated": e.saturated,
        "probes_used": e.probes_used,
        "witness": [e.witness.0, e.witness.1],
    })
}

fn execute(cmd: Command) -> Result<Value> {
    match cmd {
        Command::Eval(a) => {
            let d = load_series(&a.series)?;
            let r = d.derivative_eval(Complex64::new(a.s, a.t), a.derivative, a.tol)?;
            Ok(json!({
                "value": r.value.re,
                "imag": r.value.im,
                "truncation_bound": r.truncation_bound,
                "terms_used": r.terms_used,
                "bound_kind": r.bound_kind,
                "tolerance_met": r.tolerance_met,
            }))
        }
        Command::Spectrum(a) => {
            let sp = load_spectrum(&a.spec)?;
            let n = a.head.min(sp.len());
            let mut out = json!({
                "label": sp.label(),
                "dim": sp.dim(),
                "stored": sp.len(),
                "closed_form_tail": sp.law().is_some(),
                "eigenvalues": &sp.eigenvalues()[..n],
                "multiplicities": &sp.multiplicities()[..n],
            });
            if let Some(s) = a.s {
                let r = spectrum_to_series(&sp).eval(Complex64::new(s, 0.0), a.tol)?;
                out["zeta"] = json!({
                    "s": s,
                    "value": r.value.re,
                    "truncation_bound": r.truncation_bound,
                    "bound_kind": r.bound_kind,
                });
            }
            if let Some(path) = &a.out {
                std::fs::write(path, sp.to_json_string())?;
            }
            Ok(out)
        }
        Command::DistanceManifold(a) => {
            let x1 = load_spectrum(&a.left)?;
            let x2 = load_spectrum(&a.right)?;
            let base = match a.gamma {
                Some(g) => MetricConfig::with_gamma(g),
                None => MetricConfig::for_spectra(&x1, &x2),
            };
            let cfg = MetricConfig {
                grid_points: a.grid,
                eval_tol: a.tol,
                ..base
            };
            let r = manifold_distance(&x1, &x2, &cfg)?;
            if let Some(path) = &a.emit_samples {
                write_samples(path, "s,log_ratio", &r.samples)?;
            }
            Ok(json!({
                "value": r.value,
                "argmax_s": r.argmax_s,
                "error_estimate": r.error_estimate,
                "bounded": bounded(r.value),
                "gamma": cfg.gamma,
            }))
        }
        Command::DistanceField(a) => {
            let k1: NumberField = a.left.parse()?;
            let k2: NumberField = a.right.parse()?;
            let cfg = FieldDistanceConfig {
                a: a.a,
                guard: a.guard,
                grid_points: a.grid,
                eval_tol: a.tol,
                ..Default::default()
            };
            let r = match a.prime_bound {
                Some(p) => field_distance_euler(&k1, &k2, p, &cfg)?,
                None => field_distance(&k1, &k2, &cfg)?,
            };
            if let Some(path) = &a.emit_samples {
                write_samples(path, "s,log_ratio", &r.samples)?;
            }
            Ok(json!({
                "left": k1.to_string(),
                "right": k2.to_string(),
                "value": r.value,
                "argmax_s": r.argmax_s,
                "error_estimate": r.error_estimate,
            }))
        }
        Command::Converge(a) => {
            let grid = parse_grid(&a.grid)?;
            let fam = with_path(&a.family, SeriesFamily::from_json_str(&read(&a.family)?))?;
            for m in fam.members().iter().chain([fam.limit()]) {
                check_len(&a.family.display().to_string(), m.len())?;
            }
            let fam = match a.gamma {
                Some(g) => SeriesFamily::new(fam.members().to_vec(), fam.limit().clone(), g)?,
                None => fam,
            };
            let cfg = ReportConfig {
                eval_tol: a.tol,
                ..ReportConfig::with_grid(grid)
            };
            let report = serde_json::to_value(family_report(&fam, &cfg)?)?;
            if let Some(path) = &a.report {
                std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
            }
            Ok(report)
        }
        Command::Perron(a) => {
            let d = load_series(&a.series)?;
            let cfg = PerronConfig {
                c: a.c,
                t_max: a.t_max,
                quad_tol: a.quad_tol,
                ..Default::default()
            };
            let r = perron_sum(&d, a.x, &cfg)?;
            Ok(json!({
                "value": r.value.re,
                "imag": r.value.im,
                "quad_error": r.quad_error,
                "near_exponent": r.near_exponent,
                "on_exponent": r.on_exponent,
            }))
        }
        Command::Primorial(a) => {
            let rows = primorial_experiment(a.imax, a.tol, a.cap)?;
            if let Some(path) = &a.csv {
                let mut text = String::from("i,D_i,discriminant,L_value,error_bound\n");
                for r in &rows {
                    let _ = writeln!(text, "{},{},{},{},{}", r.i, r.d, r.discriminant, r.l_value, r.error_bound);
                }
                std::fs::write(path, text)?;
            }
            if let Some(path) = &a.svg {
                let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.i as f64, r.l_value)).collect();
                emit_svg(
                    &pts,
                    Labels {
                        title: "L(χ_D, 1) for primorial D",
                        x: "i",
                        y: "L(χ_D, 1)",
                    },
                    path,
                )?;
            }
            Ok(json!({ "rows": rows }))
        }
        Command::StieltjesNorms(a) => {
            let d = load_series(&a.series)?;
            let step = step_from_series(&d, a.shift)?;
            let lip = lip_norm_estimate(
                &step,
                a.omega,
                &LipConfig {
                    pair_budget: a.pairs,
                    delta_min: a.delta_min,
                    seed: a.seed,
                },
            )?;
            // The transform of the shifted step function is e^{-shift·s} D(s);
            // Wid is taken for D itself on s beyond both ω and the abscissa.
            let base = a.omega.max(d.gamma());
            let grid: Vec<f64> = DiagnosticConfig::for_omega(base).s_grid;
            let wid = wid_norm_estimate(&SeriesTransform { series: &d, tol: 0.0 }, a.omega, a.kmax, &grid)?;
            Ok(json!({ "lip": norm_json(&lip), "wid": norm_json(&wid) }))
        }
    }
}

fn parse_grid(text: &str) -> Result<Vec<Complex64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map(|s| Complex64::new(s, 0.0))
                .map_err(|_| Error::invalid(format!("bad grid point {t:?}")))
        })
        .collect()
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Invalid(_) => "invalid",
        Error::PoleOrZero(_) => "pole_or_zero",
        Error::Resource { .. } => "resource",
        Error::Json(_) => "json",
        Error::Io(_) => "io",
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(v) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json value serializes"));
            0
        }
        Err(e) => {
            let _ = writeln!(
                err,
                "{}",
                json!({ "error": e.to_string(), "kind": error_kind(&e) })
            );
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let argv = std::iter::once("zetametric").chain(args.iter().copied());
        let code = run(argv, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn sphere_against_rp2() {
        let (code, out, _) = call(&["distance-manifold", "--left", "catalog:sphere", "--right", "catalog:rp2", "--gamma", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["value"].as_f64().unwrap() - 0.342304599).abs() < 1e-6);
        assert!((v["argmax_s"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["eval", "--series", "/no/such/file.json", "--s", "2"]).0, 2);
        assert_eq!(call(&["eval", "--bogus"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
        assert_eq!(call(&["distance-field", "--left", "Q(sqrt:4)", "--right", "Q"]).0, 2);
        let (code, _, err) = call(&["primorial", "--imax", "12", "--cap", "1000"]);
        assert_eq!(code, 3, "{err}");
        assert!(err.contains("\"kind\":\"resource\""));
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("1.5, 2,3").unwrap().len(), 3);
        assert!(parse_grid("1.5,x").is_err());
    }
}
