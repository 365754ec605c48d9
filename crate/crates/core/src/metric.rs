//! Zeta-ratio distance `sup_{s ∈ [γ, γ+1]} |log |ζ_1(s)/ζ_2(s)||` between
//! spectra, and its bounded variant `d/(1+d)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::GeneralDirichletSeries;
use crate::spectra::{spectrum_to_series, Spectrum};
use crate::supsearch::{sup_abs, SearchConfig};

pub use crate::supsearch::DistanceResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    pub gamma: f64,
    pub grid_points: usize,
    pub refine_tol: f64,
    pub eval_tol: f64,
    /// Offset applied to the left end when it coincides with an abscissa.
    pub edge_guard: f64,
}

impl MetricConfig {
    pub fn with_gamma(gamma: f64) -> Self {
        MetricConfig {
            gamma,
            ..Default::default()
        }
    }

    /// Default left end `max(1, max dim / 2)`.
    pub fn for_spectra(x1: &Spectrum, x2: &Spectrum) -> Self {
        Self::with_gamma((x1.dim().max(x2.dim()) as f64 / 2.0).max(1.0))
    }

    fn validate(&self) -> Result<()> {
        if !self.gamma.is_finite() {
            return Err(Error::invalid("gamma must be finite"));
        }
        if !(self.eval_tol > 0.0) || !(self.edge_guard >= 0.0) {
            return Err(Error::invalid("tolerances must be positive"));
        }
        self.search().validate()
    }

    pub(crate) fn search(&self) -> SearchConfig {
        SearchConfig {
            grid_points: self.grid_points,
            refine_tol: self.refine_tol,
        }
    }
}

impl Default for MetricConfig {
    fn default() -> Self {
        MetricConfig {
            gamma: 1.0,
            grid_points: 129,
            refine_tol: 1e-10,
            eval_tol: 1e-12,
            edge_guard: 1e-6,
        }
    }
}

/// `log|A(s)| − log|B(s)|` with a first-order error bound.
fn log_ratio(a: &GeneralDirichletSeries, b: &GeneralDirichletSeries, s: f64, tol: f64) -> Result<(f64, f64)> {
    let z = Complex64::new(s, 0.0);
    let ra = a.eval(z, tol)?;
    let rb = b.eval(z, tol)?;
    let (na, nb) = (ra.value.norm(), rb.value.norm());
    for (n, which) in [(na, "first"), (nb, "second")] {
        if n <= tol {
            return Err(Error::PoleOrZero(format!(
                "{which} zeta function vanishes to tolerance at s = {s}"
            )));
        }
    }
    let err = ra.truncation_bound / na + rb.truncation_bound / nb;
    Ok((na.ln() - nb.ln(), err))
}

/// Distance between two series over `[γ, γ+1]`.
pub fn series_distance(
    a: &GeneralDirichletSeries,
    b: &GeneralDirichletSeries,
    cfg: &MetricConfig,
) -> Result<DistanceResult> {
    cfg.validate()?;
    let abscissa = a.gamma().max(b.gamma());
    if cfg.gamma < abscissa {
        return Err(Error::domain(format!(
            "gamma = {} lies left of the abscissa {abscissa}",
            cfg.gamma
        )));
    }
    let lo = if cfg.gamma <= abscissa {
        cfg.gamma + cfg.edge_guard
    } else {
        cfg.gamma
    };
    sup_abs(|s| log_ratio(a, b, s, cfg.eval_tol), lo, cfg.gamma + 1.0, &cfg.search())
}

pub fn manifold_distance(x1: &Spectrum, x2: &Spectrum, cfg: &MetricConfig) -> Result<DistanceResult> {
    let half_dim = x1.dim().max(x2.dim()) as f64 / 2.0;
    if cfg.gamma < half_dim {
        return Err(Error::domain(format!(
            "gamma = {} is below max dim/2 = {half_dim}",
            cfg.gamma
        )));
    }
    series_distance(&spectrum_to_series(x1), &spectrum_to_series(x2), cfg)
}

pub fn bounded(d: f64) -> f64 {
    d / (1.0 + d)
}

pub fn bounded_distance(x1: &Spectrum, x2: &Spectrum, cfg: &MetricConfig) -> Result<f64> {
    manifold_distance(x1, x2, cfg).map(|r| bounded(r.value))
}
