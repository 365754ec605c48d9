//! Maximisation of `|f|` over a closed interval: uniform grid, then
//! golden-section refinement inside the cells around the best grid point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub grid_points: usize,
    pub refine_tol: f64,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 2 {
            return Err(Error::invalid("grid needs at least 2 points"));
        }
        if !(self.refine_tol > 0.0) {
            return Err(Error::invalid("refinement tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub value: f64,
    pub argmax_s: f64,
    /// Grid samples `(s, f(s))` with the signed function value.
    pub samples: Vec<(f64, f64)>,
    pub error_estimate: f64,
}

/// `f` returns the signed value and an error bound for it.
pub fn sup_abs<F>(f: F, lo: f64, hi: f64, cfg: &SearchConfig) -> Result<DistanceResult>
where
    F: Fn(f64) -> Result<(f64, f64)>,
{
    cfg.validate()?;
    if !(hi > lo) {
        return Err(Error::domain(format!("empty search interval [{lo}, {hi}]")));
    }
    let n = cfg.grid_points;
    let h = (hi - lo) / (n - 1) as f64;
    let mut samples = Vec::with_capacity(n);
    let mut max_err: f64 = 0.0;
    for i in 0..n {
        let s = if i == n - 1 { hi } else { lo + i as f64 * h };
        let (v, e) = f(s)?;
        max_err = max_err.max(e);
        samples.push((s, v));
    }
    let g: Vec<f64> = samples.iter().map(|p| p.1.abs()).collect();
    let best = (0..n).fold(0, |b, i| if g[i] > g[b] { i } else { b });
    let mut value = g[best];
    let mut argmax = samples[best].0;

    // Golden-section on the bracket around the best grid point.
    let a0 = samples[best.saturating_sub(1)].0;
    let b0 = samples[(best + 1).min(n - 1)].0;
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a0, b0);
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, e1) = f(x1)?;
    let (mut f2, e2) = f(x2)?;
    max_err = max_err.max(e1).max(e2);
    f1 = f1.abs();
    f2 = f2.abs();
    let consider = |x: f64, v: f64, value: &mut f64, argmax: &mut f64| {
        if v > *value {
            *value = v;
            *argmax = x;
        }
    };
    consider(x1, f1, &mut value, &mut argmax);
    consider(x2, f2, &mut value, &mut argmax);
    let mut iterations = 0;
    while b - a > cfg.refine_tol && iterations < 200 {
        iterations += 1;
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            let (v, e) = f(x1)?;
            max_err = max_err.max(e);
            f1 = v.abs();
            consider(x1, f1, &mut value, &mut argmax);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            let (v, e) = f(x2)?;
            max_err = max_err.max(e);
            f2 = v.abs();
            consider(x2, f2, &mut value, &mut argmax);
        }
    }

    // Grid bias: in each cell |f| is at most the chord midpoint plus a
    // slope allowance taken from the neighbouring cells.
    let slopes: Vec<f64> = (0..n - 1).map(|i| (g[i + 1] - g[i]).abs() / h).collect();
    let mut bias: f64 = 0.0;
    for i in 0..n - 1 {
        let lip = slopes[i]
            .max(if i > 0 { slopes[i - 1] } else { 0.0 })
            .max(slopes.get(i + 1).copied().unwrap_or(0.0));
        let cap = 0.5 * (g[i] + g[i + 1]) + 0.5 * lip * h;
        bias = bias.max(cap - value);
    }
    Ok(DistanceResult {
        value,
        argmax_s: argmax,
        samples,
        error_estimate: bias.max(0.0) + max_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: SearchConfig = SearchConfig {
        grid_points: 65,
        refine_tol: 1e-10,
    };

    #[test]
    fn interior_maximum_is_refined() {
        let r = sup_abs(|s| Ok((1.0 - (s - 0.3337).powi(2), 0.0)), 0.0, 1.0, &CFG).unwrap();
        assert!((r.argmax_s - 0.3337).abs() < 1e-5);
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.error_estimate < 1e-3);
    }

    #[test]
    fn endpoint_maximum_is_found_exactly() {
        let r = sup_abs(|s| Ok((-2.0 * s, 1e-15)), 1.0, 2.0, &CFG).unwrap();
        assert_eq!(r.argmax_s, 2.0);
        assert_eq!(r.value, 4.0);
        assert_eq!(r.samples.len(), 65);
        assert_eq!(r.samples[64].0, 2.0);
    }

    #[test]
    fn zero_function_gives_zero() {
        let r = sup_abs(|_| Ok((0.0, 0.0)), 1.0, 2.0, &CFG).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = SearchConfig {
            grid_points: 1,
            refine_tol: 1e-9,
        };
        assert!(sup_abs(|_| Ok((0.0, 0.0)), 0.0, 1.0, &bad).is_err());
        assert!(sup_abs(|_| Ok((0.0, 0.0)), 1.0, 1.0, &CFG).is_err());
    }
}
