//! Convergence diagnostics for families of general Dirichlet series:
//! ℓ¹ distances of eigenvalue powers, pointwise distances, eigenvalue
//! column limits, ℓ∞ coefficient distances, the multiplicative sup norm,
//! Perron sums and window sums.

mod family;
mod perron;

pub use family::{family_report, ConvergenceReport, ReportConfig, Trend, TrendSummary, Verdict};
pub use perron::{perron_sum, window_sum, PerronConfig, PerronResult, WindowRoute, WindowSum};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_panels, panel_edges};
use crate::series::{GeneralDirichletSeries, TailModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson", into = "FamilyJson")]
pub struct SeriesFamily {
    members: Vec<GeneralDirichletSeries>,
    limit: GeneralDirichletSeries,
    gamma: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    members: Vec<GeneralDirichletSeries>,
    limit: GeneralDirichletSeries,
    gamma: f64,
}

impl TryFrom<FamilyJson> for SeriesFamily {
    type Error = Error;

    fn try_from(j: FamilyJson) -> Result<Self> {
        SeriesFamily::new(j.members, j.limit, j.gamma)
    }
}

impl From<SeriesFamily> for FamilyJson {
    fn from(f: SeriesFamily) -> Self {
        FamilyJson {
            members: f.members,
            limit: f.limit,
            gamma: f.gamma,
        }
    }
}

impl SeriesFamily {
    pub fn new(members: Vec<GeneralDirichletSeries>, limit: GeneralDirichletSeries, gamma: f64) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid("family has no members"));
        }
        if !gamma.is_finite() {
            return Err(Error::invalid("common abscissa must be finite"));
        }
        for (i, m) in members.iter().enumerate() {
            if m.gamma() > gamma {
                return Err(Error::invalid(format!(
                    "members[{i}] declares abscissa {} > common γ = {gamma}",
                    m.gamma()
                )));
            }
        }
        if limit.gamma() > gamma {
            return Err(Error::invalid(format!(
                "limit declares abscissa {} > common γ = {gamma}",
                limit.gamma()
            )));
        }
        Ok(SeriesFamily { members, limit, gamma })
    }

    pub fn members(&self) -> &[GeneralDirichletSeries] {
        &self.members
    }

    pub fn limit(&self) -> &GeneralDirichletSeries {
        &self.limit
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundedDistance {
    pub value: f64,
    pub error_bound: f64,
}

/// Eigenvalues `e^{μ_ν}` repeated by their (positive integer) coefficients.
pub fn expand_multiplicities(d: &GeneralDirichletSeries) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, (&mu, a)) in d.exponents().iter().zip(d.coefficients()).enumerate() {
        if a.im != 0.0 || !(a.re >= 1.0) || a.re.fract() != 0.0 {
            return Err(Error::domain(format!(
                "coefficient {i} = {a} is not a positive integer multiplicity"
            )));
        }
        out.extend(std::iter::repeat_n(mu.exp(), a.re as usize));
    }
    Ok(out)
}

/// Exact difference of two closed-form tails that differ only in scale and
/// continue identically aligned sequences.
fn aligned_tail_difference(a: &GeneralDirichletSeries, b: &GeneralDirichletSeries, gamma: f64) -> Option<Result<f64>> {
    let (TailModel::Quadratic(la), TailModel::Quadratic(lb)) = (a.tail_model(), b.tail_model()) else {
        return None;
    };
    let same_shape = la.offset == lb.offset
        && la.defect == lb.defect
        && la.mult_const == lb.mult_const
        && la.mult_linear == lb.mult_linear
        && a.len() == b.len()
        && a.coefficients() == b.coefficients();
    if !same_shape {
        return None;
    }
    if la.scale == lb.scale {
        return Some(Ok(0.0));
    }
    // λ_A/λ_B = scale_A/scale_B throughout the tail, so the sign is constant.
    let s = Complex64::new(gamma, 0.0);
    Some((|| {
        let (ta, ea) = la.tail(a.len(), s)?;
        let (tb, eb) = lb.tail(b.len(), s)?;
        Ok((ta.re - tb.re).abs() + ea + eb)
    })())
}

/// `Σ_ν |λ_{A,ν}^{-γ} − λ_{B,ν}^{-γ}|` after multiplicity expansion and
/// positional pairing.
pub fn l1_distance(a: &GeneralDirichletSeries, b: &GeneralDirichletSeries, gamma: f64) -> Result<BoundedDistance> {
    if !gamma.is_finite() || gamma < a.gamma().max(b.gamma()) {
        return Err(Error::domain(format!(
            "γ = {gamma} must be at least the common abscissa {}",
            a.gamma().max(b.gamma())
        )));
    }
    let xa: Vec<f64> = expand_multiplicities(a)?.iter().map(|l| l.powf(-gamma)).collect();
    let xb: Vec<f64> = expand_multiplicities(b)?.iter().map(|l| l.powf(-gamma)).collect();
    let common = xa.len().min(xb.len());
    let mut sum = 0.0;
    for i in (0..common).rev() {
        sum += (xa[i] - xb[i]).abs();
    }
    if let Some(tail) = aligned_tail_difference(a, b, gamma) {
        let tail = tail?;
        return Ok(BoundedDistance {
            value: sum + tail,
            error_bound: 8.0 * f64::EPSILON * (sum + tail) + 1e-15,
        });
    }
    let leftover: f64 = xa[common..].iter().chain(&xb[common..]).sum();
    let tail_a = a.unstored_tail_bound(gamma, 0).unwrap_or(f64::INFINITY);
    let tail_b = b.unstored_tail_bound(gamma, 0).unwrap_or(f64::INFINITY);
    Ok(BoundedDistance {
        value: sum,
        error_bound: leftover + tail_a + tail_b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointwiseDistance {
    pub max_distance: f64,
    pub argmax: Complex64,
    pub error_bound: f64,
}

/// `max_{s ∈ grid} |D_n(s) − D(s)|` per member.
pub fn pointwise_check(fam: &SeriesFamily, s_grid: &[Complex64], tol: f64) -> Result<Vec<PointwiseDistance>> {
    if s_grid.is_empty() {
        return Err(Error::domain("empty s grid"));
    }
    if let Some(s) = s_grid.iter().find(|s| !(s.re > fam.gamma)) {
        return Err(Error::domain(format!(
            "grid point {s} is outside Re(s) > γ = {}",
            fam.gamma
        )));
    }
    let limit_vals: Vec<_> = s_grid
        .iter()
        .map(|&s| fam.limit.eval(s, tol))
        .collect::<Result<_>>()?;
    fam.members
        .iter()
        .map(|m| {
            let mut best = PointwiseDistance {
                max_distance: -1.0,
                argmax: s_grid[0],
                error_bound: 0.0,
            };
            for (&s, l) in s_grid.iter().zip(&limit_vals) {
                let r = m.eval(s, tol)?;
                let dist = (r.value - l.value).norm();
                if dist > best.max_distance {
                    best = PointwiseDistance {
                        max_distance: dist,
                        argmax: s,
                        error_bound: r.truncation_bound + l.truncation_bound,
                    };
                }
            }
            Ok(best)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnConfig {
    pub nu_max: usize,
    /// Number of trailing members used for each column estimate.
    pub tail_window: usize,
    /// Log-log growth rate of a column above which it is flagged unbounded.
    pub growth_threshold: f64,
    /// Relative tolerance when matching limits to candidate eigenvalues.
    pub match_tol: f64,
}

impl Default for ColumnConfig {
    fn default() -> Self {
        ColumnConfig {
            nu_max: 10,
            tail_window: 8,
            growth_threshold: 0.25,
            match_tol: 1e-2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColumnEstimate {
    pub nu: usize,
    /// Value at `1/n = 0` of a least-squares polynomial in `1/n` (degree 2
    /// with at least four members in the window, else lower).
    pub limit: f64,
    pub mean: f64,
    pub spread: f64,
    pub growth_rate: f64,
    pub bounded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityMismatch {
    pub eigenvalue: f64,
    pub recovered: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnLimits {
    pub columns: Vec<ColumnEstimate>,
    pub multiplicity_match: bool,
    pub mismatches: Vec<MultiplicityMismatch>,
}

/// Least-squares slope of `ys` against `xs`.
pub(crate) fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Intercept at `1/n = 0` of a least-squares fit of `values` (members
/// `first_n, first_n + 1, …`) by a polynomial in `1/n`.
fn extrapolate_in_inverse_n(first_n: usize, values: &[f64]) -> f64 {
    let degree = match values.len() {
        0 => return f64::NAN,
        1 => return values[0],
        2 | 3 => 1,
        _ => 2,
    };
    // Normal equations in the monomials 1, x, x² with x = first_n / n, a
    // rescaling that keeps the system well conditioned.
    let m = degree + 1;
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for (i, &y) in values.iter().enumerate() {
        let x = first_n as f64 / (first_n + i) as f64;
        let basis = [1.0, x, x * x];
        for r in 0..m {
            aty[r] += basis[r] * y;
            for c in 0..m {
                ata[r][c] += basis[r] * basis[c];
            }
        }
    }
    // Gaussian elimination with partial pivoting.
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&a, &b| ata[a][col].abs().total_cmp(&ata[b][col].abs()))
            .unwrap();
        ata.swap(col, pivot);
        aty.swap(col, pivot);
        if ata[col][col] == 0.0 {
            return values.iter().sum::<f64>() / values.len() as f64;
        }
        for r in col + 1..m {
            let f = ata[r][col] / ata[col][col];
            for c in col..m {
                ata[r][c] -= f * ata[col][c];
            }
            aty[r] -= f * aty[col];
        }
    }
    let mut coef = [0.0f64; 3];
    for r in (0..m).rev() {
        let mut v = aty[r];
        for c in r + 1..m {
            v -= ata[r][c] * coef[c];
        }
        coef[r] = v / ata[r][r];
    }
    coef[0]
}

/// Per-column limit estimates of the expanded eigenvalue sequences and a
/// multiplicity cross-check against the family's limit series.
pub fn column_limits(fam: &SeriesFamily, cfg: &ColumnConfig) -> Result<ColumnLimits> {
    if cfg.nu_max == 0 || cfg.tail_window == 0 {
        return Err(Error::domain("nu_max and tail_window must be positive"));
    }
    let expanded: Vec<Vec<f64>> = fam
        .members
        .iter()
        .map(expand_multiplicities)
        .collect::<Result<_>>()?;
    let shortest = expanded.iter().map(Vec::len).min().unwrap_or(0);
    if cfg.nu_max > shortest {
        return Err(Error::domain(format!(
            "nu_max = {} exceeds the shortest expanded member length {shortest}",
            cfg.nu_max
        )));
    }
    let n_members = expanded.len();
    let start = n_members.saturating_sub(cfg.tail_window);
    let log_n: Vec<f64> = (start..n_members).map(|i| ((i + 1) as f64).ln()).collect();
    let columns: Vec<ColumnEstimate> = (0..cfg.nu_max)
        .map(|nu| {
            let window: Vec<f64> = expanded[start..].iter().map(|e| e[nu]).collect();
            let mean = window.iter().sum::<f64>() / window.len() as f64;
            let limit = extrapolate_in_inverse_n(start + 1, &window);
            let (lo, hi) = window
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            let logs: Vec<f64> = window.iter().map(|v| v.ln()).collect();
            let growth_rate = slope(&log_n, &logs);
            ColumnEstimate {
                nu: nu + 1,
                limit,
                mean,
                spread: hi - lo,
                growth_rate,
                bounded: growth_rate <= cfg.growth_threshold,
            }
        })
        .collect();

    // Group the bounded limits and compare each group's size with the
    // candidate multiplicity; groups touching nu_max may be cut short.
    let candidate: Vec<(f64, usize)> = fam
        .limit
        .exponents()
        .iter()
        .zip(fam.limit.coefficients())
        .map(|(&mu, a)| (mu.exp(), a.re.round().max(0.0) as usize))
        .collect();
    let mut mismatches = Vec::new();
    let mut counts: Vec<(f64, usize, bool)> = Vec::new();
    for col in columns.iter().filter(|c| c.bounded) {
        let matched = candidate
            .iter()
            .find(|(l, _)| (l - col.limit).abs() <= cfg.match_tol * l.abs().max(1.0));
        let key = matched.map(|m| m.0).unwrap_or(col.limit);
        match counts.iter_mut().find(|c| c.0 == key) {
            Some(c) => c.1 += 1,
            None => counts.push((key, 1, matched.is_some())),
        }
    }
    let last_limit = columns.last().map(|c| c.limit);
    for (eig, recovered, known) in counts {
        let expected = if known {
            candidate.iter().find(|c| c.0 == eig).map(|c| c.1).unwrap_or(0)
        } else {
            0
        };
        let truncated = last_limit.is_some_and(|l| (l - eig).abs() <= cfg.match_tol * eig.abs().max(1.0));
        if recovered != expected && !(truncated && recovered < expected) {
            mismatches.push(MultiplicityMismatch {
                eigenvalue: eig,
                recovered,
                expected,
            });
        }
    }
    Ok(ColumnLimits {
        columns,
        multiplicity_match: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinfDistance {
    pub value: f64,
    /// 1-based index attaining the sup.
    pub argmax_index: usize,
    /// Bound on the unstored tails of both series, if both declare one.
    pub tail_bound: Option<f64>,
}

/// `sup_ν |a_{A,ν} − a_{B,ν}| e^{-σ₁ μ_ν}` for series sharing exponents.
pub fn linf_coefficient_distance(
    a: &GeneralDirichletSeries,
    b: &GeneralDirichletSeries,
    sigma1: f64,
) -> Result<LinfDistance> {
    if a.exponents() != b.exponents() {
        return Err(Error::domain("ℓ∞ comparison needs identical exponent lists"));
    }
    if !sigma1.is_finite() || sigma1 <= a.gamma().max(b.gamma()) {
        return Err(Error::domain(format!(
            "σ₁ = {sigma1} must exceed the abscissa {}",
            a.gamma().max(b.gamma())
        )));
    }
    let mut best = (0.0, 1);
    for (i, ((&mu, x), y)) in a
        .exponents()
        .iter()
        .zip(a.coefficients())
        .zip(b.coefficients())
        .enumerate()
    {
        let v = (x - y).norm() * (-sigma1 * mu).exp();
        if v > best.0 {
            best = (v, i + 1);
        }
    }
    let tail_bound = match (a.unstored_tail_bound(sigma1, 0), b.unstored_tail_bound(sigma1, 0)) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    };
    Ok(LinfDistance {
        value: best.0,
        argmax_index: best.1,
        tail_bound,
    })
}

/// `g(t) = |t|/(1+t²)`, whose multiplicative Haar integral `∫ g/|t| dt` is π.
pub fn default_weight(t: f64) -> f64 {
    t.abs() / (1.0 + t * t)
}

/// `max_t |f(t)|/g(t)` over a grid symmetric about 0.
pub fn multiplicative_sup_norm<G: Fn(f64) -> f64>(f_values: &[Complex64], g: G, t_grid: &[f64]) -> Result<f64> {
    if f_values.len() != t_grid.len() || t_grid.is_empty() {
        return Err(Error::invalid("f samples and t grid must have equal nonzero length"));
    }
    let mut sorted: Vec<f64> = t_grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let symmetric = sorted
        .iter()
        .zip(sorted.iter().rev())
        .all(|(a, b)| (a + b).abs() <= 1e-12 * a.abs().max(1.0));
    if !symmetric {
        return Err(Error::domain("t grid must be symmetric about 0"));
    }
    let mut best: f64 = 0.0;
    for (&t, f) in t_grid.iter().zip(f_values) {
        let w = g(t);
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::domain(format!("weight g({t}) = {w} is not positive")));
        }
        best = best.max(f.norm() / w);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HaarCheck {
    pub integral: f64,
    pub finite: bool,
}

/// Numerical check that `∫_ℝ g(t)/|t| dt < ∞`, integrating over
/// `log|t| ∈ [−U, U]` for `U = 20` and `U = 40` and comparing.
pub fn haar_integrability<G: Fn(f64) -> f64>(g: G) -> Result<HaarCheck> {
    let h = |u: f64| Ok(Complex64::new(g(u.exp()) + g(-u.exp()), 0.0));
    let inner = integrate_panels(h, &panel_edges(-20.0, 20.0, 1.0, &[]), 1e-10)?.0.re;
    let outer_lo = integrate_panels(h, &panel_edges(-40.0, -20.0, 1.0, &[]), 1e-10)?.0.re;
    let outer_hi = integrate_panels(h, &panel_edges(20.0, 40.0, 1.0, &[]), 1e-10)?.0.re;
    let extra = outer_lo.abs() + outer_hi.abs();
    let integral = inner + outer_lo + outer_hi;
    Ok(HaarCheck {
        integral,
        finite: integral.is_finite() && extra <= 1e-6 * integral.abs().max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{circle_spectrum, spectrum_to_series, sphere_spectrum};
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn l1_circles_closed_form() {
        let base = spectrum_to_series(&circle_spectrum(1.0, 100).unwrap());
        assert_eq!(l1_distance(&base, &base, 1.0).unwrap().value, 0.0);
        for n in [1usize, 4, 16] {
            let r = 1.0 + 1.0 / n as f64;
            let a = spectrum_to_series(&circle_spectrum(r, 100).unwrap());
            let d = l1_distance(&a, &base, 1.0).unwrap();
            let expected = (r * r - 1.0).abs() * PI * PI / 3.0;
            assert!((d.value - expected).abs() < 1e-12, "n={n}: {} vs {expected}", d.value);
        }
    }

    #[test]
    fn l1_sphere_with_shifted_eigenvalue() {
        let s = sphere_spectrum(50).unwrap();
        let shifted = s.with_eigenvalue(0, 2.5).unwrap();
        let d = l1_distance(&spectrum_to_series(&s), &spectrum_to_series(&shifted), 2.0).unwrap();
        assert!((d.value - 0.27).abs() < 1e-14, "{}", d.value);
    }

    #[test]
    fn l1_rejects_fractional_multiplicity() {
        let a = GeneralDirichletSeries::new(vec![0.0], vec![re(1.5)], 0.0, TailModel::None).unwrap();
        assert!(l1_distance(&a, &a, 1.0).is_err());
    }

    fn column_family(f: impl Fn(usize) -> f64, n: usize) -> SeriesFamily {
        let members = (1..=n)
            .map(|k| GeneralDirichletSeries::new(vec![f(k).ln()], vec![re(1.0)], 0.0, TailModel::None).unwrap())
            .collect();
        let limit = GeneralDirichletSeries::new(vec![0.0], vec![re(1.0)], 0.0, TailModel::None).unwrap();
        SeriesFamily::new(members, limit, 0.0).unwrap()
    }

    #[test]
    fn column_limit_examples() {
        let cfg = ColumnConfig {
            nu_max: 1,
            ..Default::default()
        };
        let c = column_limits(&column_family(|n| 1.0 + 1.0 / n as f64, 32), &cfg).unwrap();
        assert!((c.columns[0].limit - 1.0).abs() < 1e-9);
        assert!(c.columns[0].bounded && c.multiplicity_match);
        let u = column_limits(&column_family(|n| n as f64, 32), &cfg).unwrap();
        assert!(!u.columns[0].bounded);
        let too_many = ColumnConfig {
            nu_max: 2,
            ..Default::default()
        };
        assert!(column_limits(&column_family(|n| n as f64, 4), &too_many).is_err());
    }

    #[test]
    fn circle_columns_recover_doubled_squares() {
        let members = (1..=32)
            .map(|n| spectrum_to_series(&circle_spectrum(1.0 + 1.0 / n as f64, 20).unwrap()))
            .collect();
        let fam = SeriesFamily::new(members, spectrum_to_series(&circle_spectrum(1.0, 20).unwrap()), 1.0).unwrap();
        let c = column_limits(&fam, &ColumnConfig::default()).unwrap();
        let expected = [1.0, 1.0, 4.0, 4.0, 9.0, 9.0, 16.0, 16.0, 25.0, 25.0];
        for (col, e) in c.columns.iter().zip(expected) {
            assert!((col.limit - e).abs() < 1e-2 * e, "{col:?}");
        }
        assert!(c.multiplicity_match, "{:?}", c.mismatches);
    }

    #[test]
    fn linf_examples() {
        let n = 50;
        let mu: Vec<f64> = (1..=n).map(|k| (k as f64).ln()).collect();
        let ones = GeneralDirichletSeries::new(mu.clone(), vec![re(1.0); n], 1.0, TailModel::None).unwrap();
        assert_eq!(linf_coefficient_distance(&ones, &ones, 2.0).unwrap().value, 0.0);
        let bumped = GeneralDirichletSeries::new(mu.clone(), vec![re(1.25); n], 1.0, TailModel::None).unwrap();
        let d = linf_coefficient_distance(&bumped, &ones, 2.0).unwrap();
        assert_eq!((d.value, d.argmax_index), (0.25, 1));
        let harmonic = GeneralDirichletSeries::new(
            mu.clone(),
            (1..=n).map(|k| re(1.0 / k as f64)).collect(),
            0.0,
            TailModel::None,
        )
        .unwrap();
        let zero = GeneralDirichletSeries::new(mu, vec![re(0.0); n], 0.0, TailModel::None).unwrap();
        assert_eq!(linf_coefficient_distance(&harmonic, &zero, 1.0).unwrap().value, 1.0);
        let other = GeneralDirichletSeries::new(vec![0.5], vec![re(1.0)], 0.0, TailModel::None).unwrap();
        assert!(linf_coefficient_distance(&other, &zero, 1.0).is_err());
    }

    #[test]
    fn multiplicative_norm_examples() {
        let grid: Vec<f64> = (-50..=50).filter(|&k| k != 0).map(|k| k as f64 * 0.1).collect();
        let zeros = vec![re(0.0); grid.len()];
        assert_eq!(multiplicative_sup_norm(&zeros, default_weight, &grid).unwrap(), 0.0);
        let g_vals: Vec<Complex64> = grid.iter().map(|&t| re(default_weight(t))).collect();
        assert!((multiplicative_sup_norm(&g_vals, default_weight, &grid).unwrap() - 1.0).abs() < 1e-15);
        let f: Vec<Complex64> = grid.iter().map(|&t| re(1.0 / (1.0 + t * t))).collect();
        let norm = multiplicative_sup_norm(&f, default_weight, &grid).unwrap();
        assert!((norm - 10.0).abs() < 1e-9);
        // g vanishes at 0
        let with_zero: Vec<f64> = (-5..=5).map(|k| k as f64).collect();
        assert!(multiplicative_sup_norm(&[re(0.0); 11], default_weight, &with_zero).is_err());
        assert!(multiplicative_sup_norm(&[re(0.0), re(0.0)], default_weight, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn haar_integral_of_default_weight_is_pi() {
        let h = haar_integrability(default_weight).unwrap();
        assert!(h.finite);
        assert!((h.integral - PI).abs() < 1e-6, "{}", h.integral);
        let flat = haar_integrability(|_| 1.0).unwrap();
        assert!(!flat.finite);
    }
}
