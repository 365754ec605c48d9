//! Laplace–Beltrami spectra and their spectral zeta series.
//!
//! Circle convention: the circle of radius `r` has eigenvalues `r^{-2}k²`,
//! each with multiplicity 2, so its zeta series is `2·r^{2s}·ζ(2s)`.

use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{GeneralDirichletSeries, QuadraticLaw, TailModel};

pub const DEFAULT_CATALOG_COUNT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpectrumJson", into = "SpectrumJson")]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<u64>,
    dim: u32,
    label: String,
    /// Closed form for the eigenvalues past the stored ones, indexed so the
    /// `k`-th stored eigenvalue is law index `k`.
    law: Option<QuadraticLaw>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumJson {
    eigenvalues: Vec<f64>,
    multiplicities: Vec<u64>,
    dim: u32,
    #[serde(default)]
    label: String,
}

impl TryFrom<SpectrumJson> for Spectrum {
    type Error = Error;

    fn try_from(j: SpectrumJson) -> Result<Self> {
        Spectrum::new(j.eigenvalues, j.multiplicities, j.dim, j.label)
    }
}

impl From<Spectrum> for SpectrumJson {
    fn from(s: Spectrum) -> Self {
        SpectrumJson {
            eigenvalues: s.eigenvalues,
            multiplicities: s.multiplicities,
            dim: s.dim,
            label: s.label,
        }
    }
}

impl Spectrum {
    pub fn new(
        eigenvalues: Vec<f64>,
        multiplicities: Vec<u64>,
        dim: u32,
        label: impl Into<String>,
    ) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::invalid("spectrum has no eigenvalues"));
        }
        if eigenvalues.len() != multiplicities.len() {
            return Err(Error::invalid(format!(
                "{} eigenvalues but {} multiplicities",
                eigenvalues.len(),
                multiplicities.len()
            )));
        }
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        for (i, &l) in eigenvalues.iter().enumerate() {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::invalid(format!(
                    "eigenvalues[{i}] = {l} is not a positive finite number"
                )));
            }
            if i > 0 && l <= eigenvalues[i - 1] {
                return Err(Error::invalid(format!(
                    "eigenvalues must be strictly increasing: eigenvalues[{i}] = {l} after {}",
                    eigenvalues[i - 1]
                )));
            }
        }
        if let Some(i) = multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::invalid(format!("multiplicities[{i}] is zero")));
        }
        Ok(Spectrum {
            eigenvalues,
            multiplicities,
            dim,
            label: label.into(),
            law: None,
        })
    }

    fn from_law(law: QuadraticLaw, count: usize, dim: u32, label: String) -> Result<Self> {
        if count == 0 {
            return Err(Error::domain("spectrum count must be at least 1"));
        }
        let eigenvalues = (1..=count).map(|k| law.eigenvalue(k)).collect();
        let multiplicities = (1..=count)
            .map(|k| law.multiplicity(k).round() as u64)
            .collect();
        let mut sp = Spectrum::new(eigenvalues, multiplicities, dim, label)?;
        sp.law = Some(law);
        Ok(sp)
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn law(&self) -> Option<&QuadraticLaw> {
        self.law.as_ref()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Replaces the stored eigenvalue at 0-based `index`. The closed-form
    /// tail (if any) is kept since it only describes unstored eigenvalues.
    pub fn with_eigenvalue(&self, index: usize, value: f64) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::domain(format!("index {index} outside the stored spectrum")));
        }
        let mut eig = self.eigenvalues.clone();
        eig[index] = value;
        let mut sp = Spectrum::new(eig, self.multiplicities.clone(), self.dim, self.label.clone())?;
        sp.law = self.law;
        Ok(sp)
    }

    /// Eigenvalues repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m as usize))
            .collect()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }
}

pub fn circle_spectrum(r: f64, count: usize) -> Result<Spectrum> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("circle radius must be positive, got {r}")));
    }
    let law = QuadraticLaw {
        scale: r.powi(-2),
        offset: 0.0,
        defect: 0.0,
        mult_const: 2.0,
        mult_linear: 0.0,
    };
    Spectrum::from_law(law, count, 1, format!("circle(r={r})"))
}

/// Round 2-sphere: `ν(ν+1)` with multiplicity `2ν+1`.
pub fn sphere_spectrum(count: usize) -> Result<Spectrum> {
    let law = QuadraticLaw {
        scale: 1.0,
        offset: 0.5,
        defect: 0.25,
        mult_const: 0.0,
        mult_linear: 2.0,
    };
    Spectrum::from_law(law, count, 2, "sphere".into())
}

/// Real projective plane: `ν(2ν+1)` with multiplicity `4ν+1`.
pub fn projective_plane_spectrum(count: usize) -> Result<Spectrum> {
    let law = QuadraticLaw {
        scale: 2.0,
        offset: 0.25,
        defect: 1.0 / 16.0,
        mult_const: 0.0,
        mult_linear: 4.0,
    };
    Spectrum::from_law(law, count, 2, "rp2".into())
}

/// Spectral zeta series `Σ m_ν λ_ν^{-s}` with abscissa `dim/2`.
///
/// Catalog spectra carry their exact closed-form tail. For other spectra a
/// power-law tail is fitted to the upper half of the stored data (Weyl-type
/// growth `λ_ν ≳ ν^{2/d}` is assumed to persist) and flagged as fitted.
pub fn spectrum_to_series(sp: &Spectrum) -> GeneralDirichletSeries {
    let exponents: Vec<f64> = sp.eigenvalues.iter().map(|l| l.ln()).collect();
    let coefficients: Vec<Complex64> = sp
        .multiplicities
        .iter()
        .map(|&m| Complex64::new(m as f64, 0.0))
        .collect();
    let tail = match sp.law {
        Some(law) => TailModel::Quadratic(law),
        None => fit_power_tail(&exponents, &sp.multiplicities),
    };
    GeneralDirichletSeries::new(exponents, coefficients, sp.dim as f64 / 2.0, tail)
        .expect("a valid spectrum yields a valid series")
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn fit_power_tail(exponents: &[f64], multiplicities: &[u64]) -> TailModel {
    let n = exponents.len();
    if n < 4 {
        return TailModel::None;
    }
    let window = n / 2..n;
    let log_nu: Vec<f64> = window.clone().map(|i| ((i + 1) as f64).ln()).collect();
    let log_m: Vec<f64> = window.clone().map(|i| (multiplicities[i] as f64).ln()).collect();
    let q = least_squares_slope(&log_nu, &exponents[window.clone()]);
    let p = least_squares_slope(&log_nu, &log_m);
    if !(q > 0.0) || !p.is_finite() {
        return TailModel::None;
    }
    // Constants chosen so the envelope covers every stored term in the window.
    let c = window
        .clone()
        .map(|i| multiplicities[i] as f64 / ((i + 1) as f64).powf(p))
        .fold(0.0, f64::max);
    let shift = window
        .map(|i| exponents[i] - q * ((i + 1) as f64).ln())
        .fold(f64::INFINITY, f64::min);
    TailModel::Power {
        c,
        p,
        q,
        shift,
        fitted: true,
    }
}

/// Catalog shorthand: `catalog:circle:r=0.5`, `catalog:sphere:n=500`,
/// `catalog:rp2`. Keys: `r` (circle radius), `n` (stored count).
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogSpec {
    pub kind: CatalogKind,
    pub radius: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogKind {
    Circle,
    Sphere,
    ProjectivePlane,
}

impl FromStr for CatalogSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut parts = text.split(':');
        if parts.next() != Some("catalog") {
            return Err(Error::invalid(format!("not a catalog reference: {text}")));
        }
        let kind = match parts.next() {
            Some("circle") => CatalogKind::Circle,
            Some("sphere") => CatalogKind::Sphere,
            Some("rp2") | Some("projective-plane") => CatalogKind::ProjectivePlane,
            other => {
                return Err(Error::invalid(format!(
                    "unknown catalog entry {other:?} (expected circle, sphere or rp2)"
                )))
            }
        };
        let mut spec = CatalogSpec {
            kind,
            radius: 1.0,
            count: DEFAULT_CATALOG_COUNT,
        };
        for kv in parts {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("catalog parameter {kv:?} is not key=value")))?;
            match key {
                "r" if kind == CatalogKind::Circle => {
                    spec.radius = value
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad radius {value:?}")))?
                }
                "n" => {
                    spec.count = value
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad count {value:?}")))?
                }
                _ => return Err(Error::invalid(format!("unknown catalog parameter {key:?}"))),
            }
        }
        Ok(spec)
    }
}

impl CatalogSpec {
    pub fn build(&self) -> Result<Spectrum> {
        match self.kind {
            CatalogKind::Circle => circle_spectrum(self.radius, self.count),
            CatalogKind::Sphere => sphere_spectrum(self.count),
            CatalogKind::ProjectivePlane => projective_plane_spectrum(self.count),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::BoundKind;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn circle_entries() {
        let c = circle_spectrum(1.0, 4).unwrap();
        assert_eq!(c.eigenvalues(), &[1.0, 4.0, 9.0, 16.0]);
        assert_eq!(c.multiplicities(), &[2, 2, 2, 2]);
        assert_eq!(c.dim(), 1);
        assert_eq!(circle_spectrum(2.0, 1).unwrap().eigenvalues()[0], 0.25);
        assert_eq!(circle_spectrum(0.5, 1).unwrap().eigenvalues()[0], 4.0);
        assert!(circle_spectrum(0.0, 3).is_err());
        assert!(circle_spectrum(1.0, 0).is_err());
    }

    #[test]
    fn sphere_and_rp2_entries() {
        let s = sphere_spectrum(2).unwrap();
        assert_eq!(s.eigenvalues(), &[2.0, 6.0]);
        assert_eq!(s.multiplicities(), &[3, 5]);
        let p = projective_plane_spectrum(2).unwrap();
        assert_eq!(p.eigenvalues(), &[3.0, 10.0]);
        assert_eq!(p.multiplicities(), &[5, 9]);
    }

    #[test]
    fn sphere_series_at_two_telescopes_to_one() {
        // Oracle: partial telescoping sum 1 − 1/(N+1)² plus its exact tail.
        let series = spectrum_to_series(&sphere_spectrum(50).unwrap());
        let r = series.eval(re(2.0), 1e-12).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12, "{}", r.value);
        let head = series.partial_sum(50, re(2.0)).unwrap().re;
        assert!((head - (1.0 - 1.0 / 51f64.powi(2))).abs() < 1e-13);
        assert_eq!(series.gamma(), 1.0);
    }

    #[test]
    fn rp2_series_at_two() {
        let series = spectrum_to_series(&projective_plane_spectrum(100).unwrap());
        let r = series.eval(re(2.0), 1e-12).unwrap();
        let expected = 4.0 - std::f64::consts::PI.powi(2) / 3.0;
        assert!((r.value.re - expected).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn circle_series_is_twice_scaled_zeta() {
        // Oracle: direct summation of 2k^{-3} to 10⁶ with integral tail.
        let series = spectrum_to_series(&circle_spectrum(1.0, 20).unwrap());
        assert_eq!(series.coefficients()[0], re(2.0));
        assert_eq!(series.exponents()[1], 4f64.ln());
        let direct: f64 = (1..=1_000_000u64).rev().map(|k| 2.0 / (k as f64).powi(3)).sum::<f64>() + 1e-12;
        let r = series.eval(re(1.5), 1e-12).unwrap();
        assert!((r.value.re - direct).abs() < 1e-11, "{} vs {direct}", r.value.re);
        assert_eq!(r.bound_kind, BoundKind::Rigorous);
    }

    #[test]
    fn sphere_first_term() {
        let series = spectrum_to_series(&sphere_spectrum(3).unwrap());
        assert_eq!(series.partial_sum(1, re(1.0)).unwrap(), re(1.5));
    }

    #[test]
    fn user_spectrum_gets_fitted_tail() {
        let eig: Vec<f64> = (1..=200).map(|k| (k * k) as f64).collect();
        let sp = Spectrum::new(eig, vec![2; 200], 1, "user").unwrap();
        let series = spectrum_to_series(&sp);
        match series.tail_model() {
            TailModel::Power { q, fitted, .. } => {
                assert!(*fitted);
                assert!((q - 2.0).abs() < 1e-9);
            }
            other => panic!("unexpected tail {other:?}"),
        }
        let r = series.eval(re(1.0), 1e-6).unwrap();
        assert_eq!(r.bound_kind, BoundKind::Heuristic);
        assert!((r.value.re - std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-2);
    }

    #[test]
    fn json_schema_and_validation() {
        let sp = Spectrum::from_json_str(
            r#"{"eigenvalues":[1.0, 3.0], "multiplicities":[1, 2], "dim": 2, "label": "x"}"#,
        )
        .unwrap();
        assert_eq!(sp.expanded(), vec![1.0, 3.0, 3.0]);
        assert!(Spectrum::from_json_str(r#"{"eigenvalues":[0.0], "multiplicities":[1], "dim": 1}"#).is_err());
        assert!(Spectrum::from_json_str(r#"{"eigenvalues":[2.0, 1.0], "multiplicities":[1, 1], "dim": 1}"#).is_err());
        assert!(Spectrum::from_json_str(r#"{"eigenvalues":[1.0], "multiplicities":[0], "dim": 1}"#).is_err());
    }

    #[test]
    fn catalog_shorthand() {
        let c: CatalogSpec = "catalog:circle:r=0.5".parse().unwrap();
        assert_eq!(c.kind, CatalogKind::Circle);
        assert_eq!(c.radius, 0.5);
        let s: CatalogSpec = "catalog:sphere:n=500".parse().unwrap();
        assert_eq!(s.build().unwrap().len(), 500);
        assert!("catalog:torus".parse::<CatalogSpec>().is_err());
        assert!("catalog:sphere:r=2".parse::<CatalogSpec>().is_err());
    }
}
