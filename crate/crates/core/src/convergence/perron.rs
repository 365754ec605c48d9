//! Perron's formula `(1/2πi) ∫_{c−iT}^{c+iT} D(s) e^{xs}/s ds` and window sums
//! of coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, panel_edges};
use crate::series::GeneralDirichletSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronConfig {
    pub c: f64,
    /// Truncation height `T`.
    pub t_max: f64,
    pub quad_tol: f64,
    pub x_guard: f64,
    pub eval_tol: f64,
}

impl Default for PerronConfig {
    fn default() -> Self {
        PerronConfig {
            c: 1.0,
            t_max: 1e4,
            quad_tol: 1e-6,
            x_guard: 1e-3,
            eval_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerronResult {
    pub value: Complex64,
    pub quad_error: f64,
    /// `x` lies within `x_guard` of an exponent without equalling it;
    /// convergence in `T` is slow there.
    pub near_exponent: bool,
    /// `x` equals an exponent, where the limit carries half that coefficient.
    pub on_exponent: bool,
}

const PANEL_CAP: f64 = 8.0;

/// Approaches `Σ_{μ_ν < x} a_ν + ½ Σ_{μ_ν = x} a_ν` as `T → ∞`.
pub fn perron_sum(d: &GeneralDirichletSeries, x: f64, cfg: &PerronConfig) -> Result<PerronResult> {
    if !x.is_finite() {
        return Err(Error::domain("x must be finite"));
    }
    if !(cfg.c > 0.0) || cfg.c <= d.gamma() {
        return Err(Error::domain(format!(
            "c = {} must exceed max(0, γ = {})",
            cfg.c,
            d.gamma()
        )));
    }
    if !(cfg.t_max > 0.0) || !(cfg.quad_tol > 0.0) || !(cfg.x_guard >= 0.0) || !(cfg.eval_tol > 0.0) {
        return Err(Error::invalid("T, quad_tol and eval_tol must be positive"));
    }
    let on_exponent = d.exponents().contains(&x);
    let near_exponent = !on_exponent && d.exponents().iter().any(|&mu| (mu - x).abs() < cfg.x_guard);
    let spread = d
        .exponents()
        .iter()
        .map(|&mu| (x - mu).abs())
        .fold(0.0, f64::max);
    let width = if spread > 0.0 {
        PANEL_CAP.min(PI / (2.0 * spread))
    } else {
        PANEL_CAP
    };
    let t = cfg.t_max;
    let edges = panel_edges(-t, t, width, &[-1.0, 1.0]);
    let c = cfg.c;
    let integrand = |tau: f64| -> Result<Complex64> {
        let s = Complex64::new(c, tau);
        let dv = d.eval(s, cfg.eval_tol)?.value;
        Ok(dv * (x * s).exp() / s)
    };
    // dt/(2π) replaces ds/(2πi).
    let (integral, err) = integrate_panels(integrand, &edges, 2.0 * PI * cfg.quad_tol)?;
    Ok(PerronResult {
        value: integral / (2.0 * PI),
        quad_error: err / (2.0 * PI),
        near_exponent,
        on_exponent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowRoute {
    Direct,
    Perron,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowSum {
    pub value: Complex64,
    pub quad_error: f64,
    pub near_exponent: bool,
}

/// Coefficient mass of the exponents in `(ell − eps, ell + eps)`.
/// The Perron route forms `I_{ell+eps} − I_{ell−eps}`.
pub fn window_sum(
    d: &GeneralDirichletSeries,
    ell: f64,
    eps: f64,
    via: WindowRoute,
    cfg: &PerronConfig,
) -> Result<WindowSum> {
    if !(eps > 0.0) || !ell.is_finite() {
        return Err(Error::domain("window needs finite centre and eps > 0"));
    }
    match via {
        WindowRoute::Direct => {
            let value = d
                .exponents()
                .iter()
                .zip(d.coefficients())
                .filter(|(&mu, _)| mu > ell - eps && mu < ell + eps)
                .map(|(_, a)| a)
                .sum();
            Ok(WindowSum {
                value,
                quad_error: 0.0,
                near_exponent: false,
            })
        }
        WindowRoute::Perron => {
            let hi = perron_sum(d, ell + eps, cfg)?;
            let lo = perron_sum(d, ell - eps, cfg)?;
            Ok(WindowSum {
                value: hi.value - lo.value,
                quad_error: hi.quad_error + lo.quad_error,
                near_exponent: hi.near_exponent || lo.near_exponent,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TailModel;
    use std::f64::consts::LN_2;

    fn one_term() -> GeneralDirichletSeries {
        GeneralDirichletSeries::new(vec![LN_2], vec![Complex64::new(1.0, 0.0)], 0.0, TailModel::None).unwrap()
    }

    fn two_terms() -> GeneralDirichletSeries {
        GeneralDirichletSeries::new(
            vec![LN_2, 3f64.ln()],
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            0.0,
            TailModel::None,
        )
        .unwrap()
    }

    #[test]
    fn step_recovered_at_moderate_height() {
        let cfg = PerronConfig {
            t_max: 1e3,
            ..Default::default()
        };
        let d = one_term();
        assert!((perron_sum(&d, 1.0, &cfg).unwrap().value.re - 1.0).abs() < 0.01);
        assert!(perron_sum(&d, 0.5, &cfg).unwrap().value.norm() < 0.01);
        let half = perron_sum(&d, LN_2, &cfg).unwrap();
        assert!(half.on_exponent);
        assert!((half.value.re - 0.5).abs() < 0.01);
        let near = perron_sum(&d, LN_2 + 1e-4, &cfg).unwrap();
        assert!(near.near_exponent);
    }

    #[test]
    fn direct_windows() {
        let d = two_terms();
        let cfg = PerronConfig::default();
        let w = window_sum(&d, LN_2, 0.1, WindowRoute::Direct, &cfg).unwrap();
        assert_eq!(w.value, Complex64::new(1.0, 0.0));
        // log 3 ≈ 1.0986 lies inside (0.9, 1.1) but not inside (0.95, 1.05).
        let wide = window_sum(&d, 1.0, 0.1, WindowRoute::Direct, &cfg).unwrap();
        assert_eq!(wide.value, Complex64::new(2.0, 0.0));
        let empty = window_sum(&d, 1.0, 0.05, WindowRoute::Direct, &cfg).unwrap();
        assert_eq!(empty.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_bad_line() {
        let cfg = PerronConfig {
            c: 0.0,
            ..Default::default()
        };
        assert!(perron_sum(&one_term(), 1.0, &cfg).is_err());
    }
}
