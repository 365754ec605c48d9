//! Step and piecewise-linear functions, their Laplace–Stieltjes transforms
//! `∫_0^∞ e^{-st} dF(t)`, and lower estimates of the Lip_ω and Wid_ω norms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::GeneralDirichletSeries;
use crate::special::{ln_factorial, CompensatedSum, one_minus_exp_over, upper_gamma_q_table};

/// `F(t) = Σ_{t_j ≤ t} a_j` (right-continuous, zero before the first jump).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    locations: Vec<f64>,
    sizes: Vec<f64>,
    #[serde(skip)]
    prefix: Vec<f64>,
}

impl StepFunction {
    pub fn new(jumps: Vec<(f64, f64)>) -> Result<Self> {
        let (locations, sizes): (Vec<f64>, Vec<f64>) = jumps.into_iter().unzip();
        for (i, (&t, &a)) in locations.iter().zip(&sizes).enumerate() {
            if !(t >= 0.0) || !t.is_finite() || !a.is_finite() {
                return Err(Error::domain(format!("jump {i} at {t} with size {a} is not admissible")));
            }
            if i > 0 && t <= locations[i - 1] {
                return Err(Error::invalid(format!("jump locations must be strictly increasing at {i}")));
            }
        }
        let prefix = sizes
            .iter()
            .scan(0.0, |acc, a| {
                *acc += a;
                Some(*acc)
            })
            .collect();
        Ok(StepFunction {
            locations,
            sizes,
            prefix,
        })
    }

    pub fn jumps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.locations.iter().copied().zip(self.sizes.iter().copied())
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.locations.partition_point(|&x| x <= t);
        if n == 0 {
            0.0
        } else {
            self.prefix[n - 1]
        }
    }

    /// `Σ a_j e^{-s t_j}`, summed like series evaluation so the two agree
    /// exactly.
    pub fn transform(&self, s: Complex64) -> Complex64 {
        self.jumps()
            .map(|(t, a)| Complex64::new(a, 0.0) * (-s * t).exp())
            .collect::<CompensatedSum>()
            .value()
    }
}

/// Jump measure of a real-coefficient series; `shift` is added to every
/// exponent and must make them nonnegative.
pub fn step_from_series(d: &GeneralDirichletSeries, shift: Option<f64>) -> Result<StepFunction> {
    let coefficients = d
        .real_coefficients()
        .ok_or_else(|| Error::domain("step functions need real coefficients"))?;
    let shift = shift.unwrap_or(0.0);
    let jumps: Vec<(f64, f64)> = d.exponents().iter().map(|mu| mu + shift).zip(coefficients).collect();
    if let Some((t, _)) = jumps.iter().find(|(t, _)| *t < 0.0) {
        return Err(Error::domain(format!(
            "exponent {t} is negative after shifting by {shift}; supply a larger shift"
        )));
    }
    StepFunction::new(jumps)
}

/// Continuous, `F(0) = 0`, slope `slopes[i]` on `[breakpoints[i], breakpoints[i+1])`,
/// the last slope continuing to infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearFunction {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
    #[serde(skip)]
    values: Vec<f64>,
}

impl PiecewiseLinearFunction {
    pub fn new(breakpoints: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != slopes.len() {
            return Err(Error::invalid("need one slope per breakpoint"));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::invalid("the first breakpoint must be 0"));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) || breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid("breakpoints must be finite and strictly increasing"));
        }
        if slopes.iter().any(|m| !m.is_finite()) {
            return Err(Error::invalid("slopes must be finite"));
        }
        let mut values = vec![0.0];
        for i in 1..breakpoints.len() {
            let v = values[i - 1] + slopes[i - 1] * (breakpoints[i] - breakpoints[i - 1]);
            values.push(v);
        }
        Ok(PiecewiseLinearFunction {
            breakpoints,
            slopes,
            values,
        })
    }

    /// Linear interpolation through `(ts[i], ys[i])` with `ts[0] = 0`,
    /// `ys[0] = 0`, held constant after the last sample.
    pub fn interpolate(ts: &[f64], ys: &[f64]) -> Result<Self> {
        if ts.len() < 2 || ts.len() != ys.len() {
            return Err(Error::invalid("need at least two samples"));
        }
        if ys[0] != 0.0 {
            return Err(Error::invalid("F(0) must be 0"));
        }
        let mut slopes: Vec<f64> = ts.windows(2).zip(ys.windows(2)).map(|(t, y)| (y[1] - y[0]) / (t[1] - t[0])).collect();
        slopes.push(0.0);
        Self::new(ts.to_vec(), slopes)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let i = self.breakpoints.partition_point(|&b| b <= t) - 1;
        self.values[i] + self.slopes[i] * (t - self.breakpoints[i])
    }

    fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.breakpoints.len()).map(move |i| {
            let b = self.breakpoints.get(i + 1).copied().unwrap_or(f64::INFINITY);
            (self.breakpoints[i], b, self.slopes[i])
        })
    }

    /// `∫_0^T e^{-st} F'(t) dt` in closed form per segment; `t_max = None`
    /// integrates to infinity. Returns the value and a bound on the part
    /// beyond `T`.
    pub fn transform(&self, s: Complex64, t_max: Option<f64>) -> Result<(Complex64, f64)> {
        let last = *self.slopes.last().unwrap();
        if t_max.is_none() && last != 0.0 && !(s.re > 0.0) {
            return Err(Error::domain("the transform of an unbounded ramp needs Re(s) > 0"));
        }
        let cap = t_max.unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b, m) in self.segments() {
            if a >= cap || m == 0.0 {
                continue;
            }
            let b = b.min(cap);
            let head = m * (-s * a).exp();
            acc += if b.is_infinite() {
                head / s
            } else {
                head * (b - a) * one_minus_exp_over(s * (b - a))
            };
        }
        let bound = match t_max {
            Some(t) if self.breakpoints.last().is_some_and(|&b| b < t) || last != 0.0 => {
                let max_slope = self
                    .segments()
                    .filter(|&(_, b, _)| b > t)
                    .map(|(_, _, m)| m.abs())
                    .fold(0.0, f64::max);
                if s.re > 0.0 {
                    max_slope * (-s.re * t).exp() / s.re
                } else if max_slope == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            _ => 0.0,
        };
        Ok((acc, bound))
    }
}

/// Anything with values at nonnegative times and known break locations.
pub trait LipTarget {
    fn value(&self, t: f64) -> f64;
    fn break_locations(&self) -> Vec<f64>;
}

impl LipTarget for StepFunction {
    fn value(&self, t: f64) -> f64 {
        self.eval(t)
    }

    fn break_locations(&self) -> Vec<f64> {
        self.locations.clone()
    }
}

impl LipTarget for PiecewiseLinearFunction {
    fn value(&self, t: f64) -> f64 {
        self.eval(t)
    }

    fn break_locations(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }
}

/// `c·F` sharing the probe set of `F`.
pub struct Scaled<'a, T: LipTarget>(pub f64, pub &'a T);

impl<T: LipTarget> LipTarget for Scaled<'_, T> {
    fn value(&self, t: f64) -> f64 {
        self.0 * self.1.value(t)
    }

    fn break_locations(&self) -> Vec<f64> {
        self.1.break_locations()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub saturated: bool,
    pub probes_used: usize,
    /// Lip: the pair `(s, t)`. Wid: `(s, k)`.
    pub witness: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipConfig {
    pub pair_budget: usize,
    pub delta_min: f64,
    pub seed: u64,
}

impl Default for LipConfig {
    fn default() -> Self {
        LipConfig {
            pair_budget: 100_000,
            delta_min: 1e-6,
            seed: 0,
        }
    }
}

const ALL_PAIRS_LIMIT: usize = 8_000_000;
const WINDOW: usize = 64;

fn probe_points(target: &dyn LipTarget, delta: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    for b in target.break_locations() {
        pts.extend([b - delta, b, b + delta]);
    }
    pts.retain(|t| *t >= 0.0 && t.is_finite());
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Best quotient over structured pairs; returns (value, witness, pairs).
fn structured_sup(target: &dyn LipTarget, omega: f64, delta: f64) -> (f64, (f64, f64), usize) {
    let pts = probe_points(target, delta);
    let vals: Vec<f64> = pts.iter().map(|&t| target.value(t)).collect();
    let n = pts.len();
    let all = n * (n - 1) / 2 <= ALL_PAIRS_LIMIT;
    let reach = if all { n } else { WINDOW };
    let min_gap = delta * (1.0 - 1e-12);
    let mut best = (0.0, (0.0, 0.0));
    let mut pairs = 0;
    for i in 0..n {
        for j in i + 1..n.min(i + 1 + reach) {
            let gap = pts[j] - pts[i];
            if gap < min_gap {
                continue;
            }
            pairs += 1;
            let q = (vals[j] - vals[i]).abs() / (gap * (omega * pts[j]).exp());
            if q > best.0 {
                best = (q, (pts[i], pts[j]));
            }
        }
    }
    (best.0, best.1, pairs)
}

/// Lower estimate of `sup_{0≤s<t} |F(t) − F(s)| / ((t − s) e^{ωt})` over
/// pairs at least `delta_min` apart. `saturated` is set when shrinking the
/// minimal gap from `10·delta_min` to `delta_min` still raises the estimate,
/// the signature of a jump.
pub fn lip_norm_estimate(target: &dyn LipTarget, omega: f64, cfg: &LipConfig) -> Result<NormEstimate> {
    if !(cfg.delta_min > 0.0) {
        return Err(Error::domain("delta_min must be positive"));
    }
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::domain("omega must be a nonnegative real"));
    }
    let (mut value, mut witness, mut probes) = structured_sup(target, omega, cfg.delta_min);
    let (coarse, _, _) = structured_sup(target, omega, 10.0 * cfg.delta_min);

    let horizon = target.break_locations().last().copied().unwrap_or(0.0) + 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let min_gap = cfg.delta_min * (1.0 - 1e-12);
    let attempts = cfg.pair_budget.saturating_sub(probes);
    for _ in 0..attempts {
        let a: f64 = rng.gen_range(0.0..horizon);
        let b: f64 = rng.gen_range(0.0..horizon);
        let (s, t) = if a < b { (a, b) } else { (b, a) };
        if t - s < min_gap {
            continue;
        }
        probes += 1;
        let q = (target.value(t) - target.value(s)).abs() / ((t - s) * (omega * t).exp());
        if q > value {
            value = q;
            witness = (s, t);
        }
    }
    Ok(NormEstimate {
        value,
        saturated: value > coarse * (1.0 + 1e-6),
        probes_used: probes,
        witness,
    })
}

/// Source of `|D^{(k)}(s)|` for real `s`.
pub trait Transform {
    /// `ln |D^{(k)}(s)|` (−∞ when it vanishes).
    fn ln_abs_derivative(&self, s: f64, k: u32) -> Result<f64>;

    /// All `ln((s−ω)^{k+1}/k! · |D^{(k)}(s)|)` for `k = 0..=k_max`.
    fn wid_terms(&self, s: f64, omega: f64, k_max: u32) -> Result<Vec<f64>> {
        (0..=k_max)
            .map(|k| {
                Ok((k as f64 + 1.0) * (s - omega).ln() - ln_factorial(k) + self.ln_abs_derivative(s, k)?)
            })
            .collect()
    }
}

/// A series with its evaluation tolerance.
pub struct SeriesTransform<'a> {
    pub series: &'a GeneralDirichletSeries,
    pub tol: f64,
}

impl Transform for SeriesTransform<'_> {
    fn ln_abs_derivative(&self, s: f64, k: u32) -> Result<f64> {
        let r = self.series.derivative_eval(Complex64::new(s, 0.0), k, self.tol)?;
        Ok(r.value.norm().ln())
    }
}

impl Transform for PiecewiseLinearFunction {
    fn ln_abs_derivative(&self, s: f64, k: u32) -> Result<f64> {
        Ok(self.wid_terms(s, 0.0, k)?[k as usize] - (k as f64 + 1.0) * s.ln() + ln_factorial(k))
    }

    /// `((s−ω)/s)^{k+1} |Σ m_i (Q(k+1, s a_i) − Q(k+1, s b_i))|`, using
    /// `∫_a^b t^k e^{-st} dt = k!/s^{k+1} (Q(k+1, sa) − Q(k+1, sb))`.
    fn wid_terms(&self, s: f64, omega: f64, k_max: u32) -> Result<Vec<f64>> {
        if !(s > 0.0) {
            return Err(Error::domain("piecewise-linear transforms need s > 0"));
        }
        let km = k_max as usize;
        let mut sums = vec![0.0; km + 1];
        for (a, b, m) in self.segments() {
            if m == 0.0 {
                continue;
            }
            let qa = upper_gamma_q_table(s * a, km);
            let qb = upper_gamma_q_table(s * b, km);
            for k in 0..=km {
                sums[k] += m * (qa[k] - qb[k]);
            }
        }
        let ratio = ((s - omega) / s).ln();
        Ok(sums
            .iter()
            .enumerate()
            .map(|(k, v)| (k as f64 + 1.0) * ratio + v.abs().ln())
            .collect())
    }
}

/// Lower estimate of `sup_{s>ω, k} (s−ω)^{k+1}/k! |D^{(k)}(s)|` over the grid
/// and `k ≤ k_max`, formed in log space. `saturated` is set when the best
/// `k` is `k_max`.
pub fn wid_norm_estimate(d: &dyn Transform, omega: f64, k_max: u32, s_grid: &[f64]) -> Result<NormEstimate> {
    if s_grid.is_empty() {
        return Err(Error::domain("empty s grid"));
    }
    if let Some(s) = s_grid.iter().find(|&&s| !(s > omega)) {
        return Err(Error::domain(format!("grid point {s} is not right of ω = {omega}")));
    }
    let mut best = (f64::NEG_INFINITY, (s_grid[0], 0.0));
    for &s in s_grid {
        for (k, ln_term) in d.wid_terms(s, omega, k_max)?.into_iter().enumerate() {
            if ln_term > best.0 {
                best = (ln_term, (s, k as f64));
            }
        }
    }
    Ok(NormEstimate {
        value: best.0.exp(),
        saturated: best.0.is_finite() && best.1 .1 == k_max as f64,
        probes_used: s_grid.len() * (k_max as usize + 1),
        witness: best.1,
    })
}

/// `n` logarithmically spaced points in `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticConfig {
    pub k_max: u32,
    pub s_grid: Vec<f64>,
    pub lip: LipConfig,
    /// Evaluation tolerance for the series derivatives.
    pub eval_tol: f64,
}

impl DiagnosticConfig {
    pub fn for_omega(omega: f64) -> Self {
        DiagnosticConfig {
            k_max: 60,
            s_grid: log_grid(1e-2, 1e3, 64).into_iter().map(|s| s + omega).collect(),
            lip: LipConfig::default(),
            eval_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticRow {
    pub n: usize,
    pub wid: NormEstimate,
    pub lip: NormEstimate,
}

/// Per member: the Wid_ω estimate of `D_n − D` beside the Lip_ω estimate of
/// its step function, with identical probe budgets across members.
pub fn final_diagnostic(
    members: &[GeneralDirichletSeries],
    limit: &GeneralDirichletSeries,
    omega: f64,
    cfg: &DiagnosticConfig,
) -> Result<Vec<DiagnosticRow>> {
    members
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let diff = m.difference(limit)?;
            let step = step_from_series(&diff, None)?;
            let wid = wid_norm_estimate(
                &SeriesTransform {
                    series: &diff,
                    tol: cfg.eval_tol,
                },
                omega,
                cfg.k_max,
                &cfg.s_grid,
            )?;
            let lip = lip_norm_estimate(&step, omega, &cfg.lip)?;
            Ok(DiagnosticRow { n: i + 1, wid, lip })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TailModel;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ramp() -> PiecewiseLinearFunction {
        PiecewiseLinearFunction::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap()
    }

    #[test]
    fn step_values() {
        let d = GeneralDirichletSeries::new(vec![0.5, 1.5], vec![re(1.0), re(2.0)], 0.0, TailModel::None).unwrap();
        let f = step_from_series(&d, None).unwrap();
        assert_eq!(f.eval(1.0), 1.0);
        assert_eq!(f.eval(2.0), 3.0);
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(0.4), 0.0);
        let s = Complex64::new(0.7, 2.0);
        assert_eq!(f.transform(s), d.eval(s, 0.0).unwrap().value);

        let one = GeneralDirichletSeries::new(vec![0.0], vec![re(1.0)], 0.0, TailModel::None).unwrap();
        let g = step_from_series(&one, None).unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        assert_eq!(g.eval(100.0), 1.0);
    }

    #[test]
    fn step_rejects_bad_series() {
        let neg = GeneralDirichletSeries::new(vec![-1.0], vec![re(1.0)], 0.0, TailModel::None).unwrap();
        assert!(step_from_series(&neg, None).is_err());
        assert_eq!(step_from_series(&neg, Some(1.0)).unwrap().eval(0.0), 1.0);
        let complex =
            GeneralDirichletSeries::new(vec![1.0], vec![Complex64::new(1.0, 1.0)], 0.0, TailModel::None).unwrap();
        assert!(step_from_series(&complex, None).is_err());
    }

    #[test]
    fn ramp_transform() {
        for s in [re(0.3), re(2.0), Complex64::new(1.0, 5.0)] {
            let (v, b) = ramp().transform(s, None).unwrap();
            let exact = (1.0 - (-s).exp()) / s;
            assert!((v - exact).norm() < 1e-12, "{s}");
            assert_eq!(b, 0.0);
        }
        let small = 1e-6;
        let (v, _) = ramp().transform(re(small), None).unwrap();
        assert!((v.re + (-small).exp_m1() / small).abs() < 1e-14);
        let unbounded = PiecewiseLinearFunction::new(vec![0.0], vec![1.0]).unwrap();
        assert!(unbounded.transform(re(0.0), None).is_err());
        let (v, b) = unbounded.transform(re(1.0), Some(30.0)).unwrap();
        assert!((v.re - 1.0).abs() <= b + 1e-15);
    }

    #[test]
    fn lip_examples() {
        let cfg = LipConfig {
            pair_budget: 2000,
            delta_min: 1e-3,
            seed: 7,
        };
        let r = lip_norm_estimate(&ramp(), 0.0, &cfg).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12 && !r.saturated);
        let zero = StepFunction::new(vec![]).unwrap();
        assert_eq!(lip_norm_estimate(&zero, 0.0, &cfg).unwrap().value, 0.0);
        let step = StepFunction::new(vec![(1.0, 1.0)]).unwrap();
        let e = lip_norm_estimate(&step, 0.0, &cfg).unwrap();
        assert!((e.value - 1000.0).abs() < 1e-6, "{}", e.value);
        assert!(e.saturated);
        // Every estimate is an achieved quotient.
        let (s, t) = e.witness;
        assert_eq!(e.value, (step.eval(t) - step.eval(s)).abs() / (t - s));
    }

    #[test]
    fn wid_examples() {
        let grid = log_grid(1e-2, 1e3, 64);
        let r = wid_norm_estimate(&ramp(), 0.0, 20, &grid).unwrap();
        assert!((r.value - 1.0).abs() < 1e-3 && !r.saturated, "{r:?}");

        let zero = GeneralDirichletSeries::new(vec![1.0], vec![re(0.0)], 0.0, TailModel::None).unwrap();
        let z = wid_norm_estimate(&SeriesTransform { series: &zero, tol: 0.0 }, 0.0, 10, &grid).unwrap();
        assert_eq!(z.value, 0.0);

        // Single term: max over s of s^{k+1} e^{-s}/k! sits at s = k+1.
        let single = GeneralDirichletSeries::new(vec![1.0], vec![re(1.0)], 0.0, TailModel::None).unwrap();
        let fine: Vec<f64> = (1..=200).map(|i| i as f64 * 0.5).collect();
        let mut last = 0.0;
        for k_max in [5u32, 20, 60] {
            let e = wid_norm_estimate(&SeriesTransform { series: &single, tol: 0.0 }, 0.0, k_max, &fine).unwrap();
            let k = k_max as f64;
            let oracle = ((k + 1.0) * (k + 1.0).ln() - (k + 1.0) - ln_factorial(k_max)).exp();
            assert!((e.value - oracle).abs() < 1e-9 * oracle);
            assert!(e.saturated && e.value > last);
            last = e.value;
        }
        assert!(wid_norm_estimate(&ramp(), 1.0, 3, &[0.5]).is_err());
    }

    #[test]
    fn piecewise_derivatives_match_transform() {
        // k = 0 term times s equals s·|transform| for ω = 0.
        let f = PiecewiseLinearFunction::new(vec![0.0, 0.5, 2.0], vec![2.0, -1.0, 0.0]).unwrap();
        let s = 1.7;
        let (v, _) = f.transform(re(s), None).unwrap();
        let t = f.wid_terms(s, 0.0, 0).unwrap()[0];
        assert!((t.exp() - s * v.norm()).abs() < 1e-12);
    }
}
