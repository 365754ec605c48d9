use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{column_limits, l1_distance, pointwise_check, slope, ColumnConfig, ColumnLimits, SeriesFamily};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub s_grid: Vec<Complex64>,
    pub eval_tol: f64,
    pub columns: ColumnConfig,
    /// Distances at or below this count as zero.
    pub zero_tol: f64,
    /// Log-log slope separating decay from a flat or growing trend.
    pub trend_slope: f64,
}

impl ReportConfig {
    pub fn with_grid(s_grid: Vec<Complex64>) -> Self {
        ReportConfig {
            s_grid,
            eval_tol: 1e-10,
            columns: ColumnConfig::default(),
            zero_tol: 1e-9,
            trend_slope: 0.25,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Zero,
    Decaying,
    Flat,
    Growing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendSummary {
    pub trend: Trend,
    /// Log-log slope over the trailing half of the family.
    pub slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every available criterion vanishes on the trailing members.
    Converged,
    /// Every available criterion decays.
    ConsistentWithConvergence,
    /// Criteria disagree.
    Inconsistent,
    /// Pointwise distances do not decay.
    Diverging,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `None` where the ℓ¹ comparison does not apply (non-spectral members).
    pub l1_distances: Option<Vec<f64>>,
    pub l1_trend: Option<TrendSummary>,
    pub pointwise_distances: Vec<f64>,
    pub pointwise_trend: TrendSummary,
    pub column_limits: Option<ColumnLimits>,
    pub verdict: Verdict,
}

fn summarize(values: &[f64], cfg: &ReportConfig) -> TrendSummary {
    let start = values.len() / 2;
    let tail = &values[start..];
    if tail.iter().all(|&v| v <= cfg.zero_tol) {
        return TrendSummary {
            trend: Trend::Zero,
            slope: 0.0,
        };
    }
    let pts: Vec<(f64, f64)> = tail
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.0)
        .map(|(i, &v)| (((start + i + 1) as f64).ln(), v.ln()))
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    let s = slope(&xs, &ys);
    let trend = if s < -cfg.trend_slope {
        Trend::Decaying
    } else if s > cfg.trend_slope {
        Trend::Growing
    } else {
        Trend::Flat
    };
    TrendSummary { trend, slope: s }
}

/// Runs the ℓ¹, pointwise and column diagnostics and compares their trends.
/// Trends over a finite prefix are evidence, not proof.
pub fn family_report(fam: &SeriesFamily, cfg: &ReportConfig) -> Result<ConvergenceReport> {
    let l1: Option<Vec<f64>> = fam
        .members()
        .iter()
        .map(|m| l1_distance(m, fam.limit(), fam.gamma()).map(|d| d.value).ok())
        .collect();
    let pointwise: Vec<f64> = pointwise_check(fam, &cfg.s_grid, cfg.eval_tol)?
        .into_iter()
        .map(|p| p.max_distance)
        .collect();
    let columns = match l1 {
        Some(_) => {
            let shortest = fam
                .members()
                .iter()
                .map(|m| super::expand_multiplicities(m).map(|e| e.len()).unwrap_or(0))
                .min()
                .unwrap_or(0);
            let col_cfg = ColumnConfig {
                nu_max: cfg.columns.nu_max.min(shortest),
                ..cfg.columns
            };
            (col_cfg.nu_max > 0).then(|| column_limits(fam, &col_cfg)).transpose()?
        }
        None => None,
    };
    let l1_trend = l1.as_deref().map(|v| summarize(v, cfg));
    let pointwise_trend = summarize(&pointwise, cfg);

    let mut trends = vec![pointwise_trend.trend];
    trends.extend(l1_trend.map(|t| t.trend));
    let columns_ok = columns
        .as_ref()
        .is_none_or(|c| c.multiplicity_match && c.columns.iter().all(|col| col.bounded));
    let verdict = if matches!(pointwise_trend.trend, Trend::Growing | Trend::Flat) {
        if trends.iter().all(|t| *t == pointwise_trend.trend) || pointwise_trend.trend == Trend::Growing {
            Verdict::Diverging
        } else {
            Verdict::Inconsistent
        }
    } else if trends.iter().all(|t| *t == Trend::Zero) && columns_ok {
        Verdict::Converged
    } else if trends.iter().all(|t| matches!(t, Trend::Zero | Trend::Decaying)) && columns_ok {
        Verdict::ConsistentWithConvergence
    } else {
        Verdict::Inconsistent
    };
    Ok(ConvergenceReport {
        l1_distances: l1,
        l1_trend,
        pointwise_distances: pointwise,
        pointwise_trend,
        column_limits: columns,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{GeneralDirichletSeries, TailModel};
    use crate::spectra::{circle_spectrum, spectrum_to_series};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn circle_family(n: usize) -> SeriesFamily {
        let members = (1..=n)
            .map(|k| spectrum_to_series(&circle_spectrum(1.0 + 1.0 / k as f64, 60).unwrap()))
            .collect();
        SeriesFamily::new(members, spectrum_to_series(&circle_spectrum(1.0, 60).unwrap()), 1.0).unwrap()
    }

    #[test]
    fn constant_family_converged() {
        let d = spectrum_to_series(&circle_spectrum(1.0, 30).unwrap());
        let fam = SeriesFamily::new(vec![d.clone(); 6], d, 1.0).unwrap();
        let r = family_report(&fam, &ReportConfig::with_grid(vec![re(2.0), re(3.0)])).unwrap();
        assert_eq!(r.verdict, Verdict::Converged);
        assert!(r.pointwise_distances.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn circle_family_consistent() {
        let r = family_report(&circle_family(16), &ReportConfig::with_grid(vec![re(1.5), re(2.0)])).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentWithConvergence, "{r:?}");
        assert!((r.l1_trend.unwrap().slope + 1.0).abs() < 0.2);
        let cols = r.column_limits.unwrap();
        assert!(cols.multiplicity_match, "{:?}", cols.mismatches);
    }

    #[test]
    fn growing_coefficient_diverges() {
        let members = (1..=16)
            .map(|n| {
                GeneralDirichletSeries::new(vec![0.0, 1.0], vec![re(n as f64), re(1.0)], 0.0, TailModel::None)
                    .unwrap()
            })
            .collect();
        let limit = GeneralDirichletSeries::new(vec![0.0, 1.0], vec![re(1.0), re(1.0)], 0.0, TailModel::None).unwrap();
        let fam = SeriesFamily::new(members, limit, 0.0).unwrap();
        let r = family_report(&fam, &ReportConfig::with_grid(vec![re(1.0)])).unwrap();
        assert_eq!(r.verdict, Verdict::Diverging);
    }
}
