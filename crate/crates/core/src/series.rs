//! General Dirichlet series `D(s) = Σ a_ν e^{-s μ_ν}` stored as finitely many
//! terms plus a tail model describing the unstored remainder.
//!
//! Evaluation reports a truncation bound alongside every value. The bound is
//! rigorous when a declared (non-fitted) tail model is present; otherwise it
//! only accounts for the stored terms that were skipped and is flagged
//! heuristic.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{hurwitz_zeta, ln_factorial, upper_gamma_q_table, CompensatedSum};

/// Closed-form law for the terms beyond the stored prefix:
/// eigenvalue `λ_k = scale·((k + offset)² − defect)` carried with weight
/// `mult_const + mult_linear·(k + offset)`, term `k` being `weight·λ_k^{-s}`.
///
/// The three catalog spectra fit this shape; their tails then reduce to a
/// rapidly convergent combination of Hurwitz zeta values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticLaw {
    pub scale: f64,
    pub offset: f64,
    pub defect: f64,
    pub mult_const: f64,
    pub mult_linear: f64,
}

impl QuadraticLaw {
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let x = k as f64 + self.offset;
        self.scale * (x * x - self.defect)
    }

    pub fn multiplicity(&self, k: usize) -> f64 {
        self.mult_const + self.mult_linear * (k as f64 + self.offset)
    }

    fn validate(&self) -> Result<()> {
        let ok = self.scale > 0.0
            && self.scale.is_finite()
            && self.offset >= 0.0
            && self.offset.is_finite()
            && self.defect >= 0.0
            && self.defect <= self.offset * self.offset
            && self.mult_const >= 0.0
            && self.mult_linear >= 0.0
            && self.mult_const + self.mult_linear > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "quadratic tail law needs scale > 0, offset ≥ 0, 0 ≤ defect ≤ offset², nonnegative weights: {self:?}"
            )))
        }
    }

    /// Smallest real part of `s` for which the tail converges.
    pub fn abscissa(&self) -> f64 {
        if self.mult_linear > 0.0 {
            1.0
        } else {
            0.5
        }
    }

    /// `Σ_{k>n} weight_k λ_k^{-s}` with an error bound.
    pub fn tail(&self, n: usize, s: Complex64) -> Result<(Complex64, f64)> {
        if s.re <= self.abscissa() {
            return Err(Error::domain(format!(
                "quadratic tail diverges for Re(s) = {} ≤ {}",
                s.re,
                self.abscissa()
            )));
        }
        let x0 = n as f64 + 1.0 + self.offset;
        let scale_pow = (-s * self.scale.ln()).exp();
        let scale_abs = scale_pow.norm();
        let ratio_base = self.defect / (x0 * x0);
        let sigma = s.re;
        let z_bound = |w: f64| x0.powf(-w) * (1.0 + x0 / (w - 1.0));

        let mut acc = CompensatedSum::default();
        let mut err = 0.0;
        let mut coef = Complex64::new(1.0, 0.0);
        let mut j = 0usize;
        loop {
            let jf = j as f64;
            let w0 = 2.0 * s + 2.0 * jf;
            let mut term = Complex64::new(0.0, 0.0);
            let mut bound = 0.0;
            if self.mult_const > 0.0 {
                let (z, e) = hurwitz_zeta(w0, x0)?;
                term += self.mult_const * z;
                err += scale_abs * coef.norm() * self.mult_const * e;
                bound += self.mult_const * z_bound(2.0 * sigma + 2.0 * jf);
            }
            if self.mult_linear > 0.0 {
                let (z, e) = hurwitz_zeta(w0 - 1.0, x0)?;
                term += self.mult_linear * z;
                err += scale_abs * coef.norm() * self.mult_linear * e;
                bound += self.mult_linear * z_bound(2.0 * sigma + 2.0 * jf - 1.0);
            }
            acc.add(scale_pow * coef * term);
            if self.defect == 0.0 {
                break;
            }
            let b_j = scale_abs * coef.norm() * bound;
            let r = ((s.norm() + jf) / (jf + 1.0)).max(1.0) * ratio_base;
            if r < 0.5 && b_j <= 1e-17 * acc.value().norm() {
                err += b_j * r / (1.0 - r);
                break;
            }
            if j >= 400 {
                err += if r < 1.0 { b_j * r / (1.0 - r) } else { f64::INFINITY };
                break;
            }
            coef *= (s + jf) * self.defect / (jf + 1.0);
            j += 1;
        }
        Ok((acc.value(), err))
    }

    /// Power-law envelope `(C, p, q, shift)` valid for every index `k ≥ 1`:
    /// weight ≤ C·k^p and `log λ_k ≥ q·log k + shift`.
    fn envelope(&self) -> (f64, f64, f64, f64) {
        let (c, p) = if self.mult_linear > 0.0 {
            (self.mult_const + self.mult_linear * (1.0 + self.offset), 1.0)
        } else {
            (self.mult_const, 0.0)
        };
        (c, p, 2.0, self.scale.ln())
    }
}

/// Descriptor for the unstored remainder `Σ_{ν>N} a_ν e^{-s μ_ν}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TailModel {
    /// Nothing is known beyond the stored terms.
    #[default]
    None,
    /// `|a_ν| ≤ c·ν^p` and `μ_ν ≥ q·log ν + shift` for every index.
    Power {
        c: f64,
        p: f64,
        q: f64,
        #[serde(default)]
        shift: f64,
        /// Parameters were fitted to data rather than declared.
        #[serde(default)]
        fitted: bool,
    },
    /// `μ_{ν+1} − μ_ν ≥ delta > 0` and `|a_ν| ≤ c` for every index.
    Geometric { c: f64, delta: f64 },
    /// Terms past the stored prefix follow a [`QuadraticLaw`] exactly.
    Quadratic(QuadraticLaw),
}

impl TailModel {
    fn validate(&self) -> Result<()> {
        match *self {
            TailModel::None => Ok(()),
            TailModel::Power { c, p, q, shift, .. } => {
                if c >= 0.0 && p.is_finite() && q > 0.0 && shift.is_finite() && c.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "power tail needs c ≥ 0, q > 0, finite p and shift (c={c}, p={p}, q={q}, shift={shift})"
                    )))
                }
            }
            TailModel::Geometric { c, delta } => {
                if c >= 0.0 && c.is_finite() && delta > 0.0 && delta.is_finite() {
                    Ok(())
                } else {
                    Err(Error::invalid(format!(
                        "geometric tail needs c ≥ 0 and delta > 0 (c={c}, delta={delta})"
                    )))
                }
            }
            TailModel::Quadratic(law) => law.validate(),
        }
    }

    fn is_rigorous(&self) -> bool {
        match self {
            TailModel::None => false,
            TailModel::Power { fitted, .. } => !fitted,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub truncation_bound: f64,
    pub terms_used: usize,
    pub bound_kind: BoundKind,
    /// Whether `truncation_bound ≤ tol` was reached.
    pub tolerance_met: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralDirichletSeries {
    exponents: Vec<f64>,
    coefficients: Vec<Complex64>,
    gamma: f64,
    tail: TailModel,
}

impl GeneralDirichletSeries {
    pub fn new(
        exponents: Vec<f64>,
        coefficients: Vec<Complex64>,
        gamma: f64,
        tail: TailModel,
    ) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::domain("a series needs at least one term"));
        }
        if exponents.len() != coefficients.len() {
            return Err(Error::invalid(format!(
                "{} exponents but {} coefficients",
                exponents.len(),
                coefficients.len()
            )));
        }
        if !gamma.is_finite() {
            return Err(Error::invalid("declared abscissa must be finite"));
        }
        for (i, mu) in exponents.iter().enumerate() {
            if !mu.is_finite() {
                return Err(Error::invalid(format!("exponents[{i}] is not finite")));
            }
        }
        for (i, w) in exponents.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::invalid(format!(
                    "exponents must be strictly increasing: exponents[{}] = {} does not exceed exponents[{}] = {}",
                    i + 1,
                    w[1],
                    i,
                    w[0]
                )));
            }
        }
        for (i, a) in coefficients.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::invalid(format!("coefficients[{i}] is not finite")));
            }
        }
        tail.validate()?;
        Ok(GeneralDirichletSeries {
            exponents,
            coefficients,
            gamma,
            tail,
        })
    }

    /// Builds a series from terms in any order; coefficients on equal
    /// exponents are merged.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (f64, Complex64)>,
        gamma: f64,
        tail: TailModel,
    ) -> Result<Self> {
        let mut terms: Vec<(f64, Complex64)> = terms.into_iter().collect();
        if terms.iter().any(|(mu, _)| !mu.is_finite()) {
            return Err(Error::invalid("non-finite exponent"));
        }
        terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut exponents: Vec<f64> = Vec::with_capacity(terms.len());
        let mut coefficients: Vec<Complex64> = Vec::with_capacity(terms.len());
        for (mu, a) in terms {
            match exponents.last() {
                Some(&last) if last == mu => *coefficients.last_mut().unwrap() += a,
                _ => {
                    exponents.push(mu);
                    coefficients.push(a);
                }
            }
        }
        Self::new(exponents, coefficients, gamma, tail)
    }

    /// Classical series `Σ_{ν≤n} a_ν ν^{-s}` with exponents `log ν`.
    pub fn classical(coefficients: Vec<Complex64>, gamma: f64, tail: TailModel) -> Result<Self> {
        let exponents = (1..=coefficients.len()).map(|n| (n as f64).ln()).collect();
        Self::new(exponents, coefficients, gamma, tail)
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn tail_model(&self) -> &TailModel {
        &self.tail
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn with_tail(mut self, tail: TailModel) -> Result<Self> {
        tail.validate()?;
        self.tail = tail;
        Ok(self)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::invalid("declared abscissa must be finite"));
        }
        self.gamma = gamma;
        Ok(self)
    }

    /// Coefficients as reals, or `None` if any has a nonzero imaginary part.
    pub fn real_coefficients(&self) -> Option<Vec<f64>> {
        self.coefficients
            .iter()
            .map(|a| (a.im == 0.0).then_some(a.re))
            .collect()
    }

    /// `self − other` over the union of exponents. The result carries no
    /// tail model.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        let terms = self
            .exponents
            .iter()
            .copied()
            .zip(self.coefficients.iter().copied())
            .chain(
                other
                    .exponents
                    .iter()
                    .copied()
                    .zip(other.coefficients.iter().map(|a| -a)),
            );
        Self::from_terms(terms, self.gamma.max(other.gamma), TailModel::None)
    }

    /// Multiplies every coefficient by `c`, scaling tail constants to match.
    pub fn scaled(&self, c: f64) -> Self {
        let tail = match self.tail {
            TailModel::Power {
                c: tc,
                p,
                q,
                shift,
                fitted,
            } => TailModel::Power {
                c: tc * c.abs(),
                p,
                q,
                shift,
                fitted,
            },
            TailModel::Geometric { c: tc, delta } => TailModel::Geometric {
                c: tc * c.abs(),
                delta,
            },
            TailModel::Quadratic(_) | TailModel::None => TailModel::None,
        };
        GeneralDirichletSeries {
            exponents: self.exponents.clone(),
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
            gamma: self.gamma,
            tail,
        }
    }

    fn check_half_plane(&self, s: Complex64) -> Result<()> {
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::domain("s is not finite"));
        }
        if s.re <= self.gamma {
            return Err(Error::domain(format!(
                "Re(s) = {} is not right of the declared abscissa {}",
                s.re, self.gamma
            )));
        }
        Ok(())
    }

    /// `a_ν (−μ_ν)^k e^{-s μ_ν}`.
    fn term(&self, idx: usize, s: Complex64, k: u32) -> Complex64 {
        let mu = self.exponents[idx];
        let a = self.coefficients[idx];
        if k == 0 {
            return a * (-s * mu).exp();
        }
        if mu == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // (−μ)^k is positive when μ < 0 or k is even.
        let sign = if mu < 0.0 || k.is_multiple_of(2) { 1.0 } else { -1.0 };
        a * sign * (Complex64::new(k as f64 * mu.abs().ln(), 0.0) - s * mu).exp()
    }

    /// Bound on `Σ_{ν>n} |a_ν| |μ_ν|^k e^{-σ μ_ν}` from the tail model alone,
    /// valid when the model covers every index past `n`.
    fn model_bound(&self, n: usize, sigma: f64, k: u32) -> f64 {
        match self.tail {
            TailModel::None => f64::INFINITY,
            TailModel::Power { c, p, q, shift, .. } => power_tail_bound(c, p, q, shift, n, sigma, k),
            TailModel::Geometric { c, delta } => {
                let m = if n < self.len() {
                    self.exponents[n]
                } else {
                    self.exponents[self.len() - 1] + delta
                };
                geometric_tail_bound(c, delta, m, sigma, k)
            }
            TailModel::Quadratic(law) => {
                if n < self.len() {
                    f64::INFINITY
                } else {
                    let (c, p, q, shift) = law.envelope();
                    power_tail_bound(c, p, q, shift, n, sigma, k)
                }
            }
        }
    }

    fn evaluate(&self, s: Complex64, k: u32, tol: f64) -> Result<EvalResult> {
        self.check_half_plane(s)?;
        if !(tol >= 0.0) {
            return Err(Error::domain(format!("tolerance must be ≥ 0, got {tol}")));
        }
        let len = self.len();
        let sigma = s.re;
        let kind = if self.tail.is_rigorous() {
            BoundKind::Rigorous
        } else {
            BoundKind::Heuristic
        };

        // Analytic tail: every stored term is used and the law covers the rest.
        if let (TailModel::Quadratic(law), 0) = (self.tail, k) {
            let (tail, err) = law.tail(len, s)?;
            let head: CompensatedSum = (0..len).map(|i| self.term(i, s, 0)).collect();
            return Ok(EvalResult {
                value: head.value() + tail,
                truncation_bound: err,
                terms_used: len,
                bound_kind: kind,
                tolerance_met: err <= tol,
            });
        }

        // suffix[n] = Σ_{ν>n} |term_ν| over stored terms.
        let mut suffix = vec![0.0; len + 1];
        for i in (0..len).rev() {
            let mu = self.exponents[i];
            let mag = self.coefficients[i].norm()
                * if k == 0 { 1.0 } else { mu.abs().powi(k as i32) }
                * (-sigma * mu).exp();
            suffix[i] = suffix[i + 1] + mag;
        }
        let beyond = self.model_bound(len, sigma, k);
        let beyond = if matches!(self.tail, TailModel::None) {
            0.0
        } else {
            beyond
        };
        let bound_at = |n: usize| -> f64 { self.model_bound(n, sigma, k).min(suffix[n] + beyond) };

        // Bounds are nonincreasing in n.
        let (terms_used, bound) = if bound_at(len) > tol {
            (len, bound_at(len))
        } else {
            let (mut lo, mut hi) = (1usize, len);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if bound_at(mid) <= tol {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            (lo, bound_at(lo))
        };
        let acc: CompensatedSum = (0..terms_used).map(|i| self.term(i, s, k)).collect();
        Ok(EvalResult {
            value: acc.value(),
            truncation_bound: bound,
            terms_used,
            bound_kind: kind,
            tolerance_met: bound <= tol,
        })
    }

    /// `D(s)` using the fewest stored terms whose truncation bound is within
    /// `tol` (all terms when that cannot be reached).
    pub fn eval(&self, s: Complex64, tol: f64) -> Result<EvalResult> {
        self.evaluate(s, 0, tol)
    }

    /// `D^{(k)}(s) = Σ a_ν (−μ_ν)^k e^{-s μ_ν}`.
    pub fn derivative_eval(&self, s: Complex64, k: u32, tol: f64) -> Result<EvalResult> {
        self.evaluate(s, k, tol)
    }

    /// Exact sum of the first `n` stored terms.
    pub fn partial_sum(&self, n: usize, s: Complex64) -> Result<Complex64> {
        if n == 0 || n > self.len() {
            return Err(Error::domain(format!(
                "partial sum length {n} outside 1..={}",
                self.len()
            )));
        }
        let acc: CompensatedSum = (0..n).map(|i| self.term(i, s, 0)).collect();
        Ok(acc.value())
    }

    /// Finite-window proxy for `limsup log ν / μ_ν` over 1-based indices.
    /// This is an estimate, not a bound on the abscissa.
    pub fn abscissa_estimate(&self, window: RangeInclusive<usize>) -> Result<f64> {
        let (lo, hi) = (*window.start(), *window.end());
        if lo == 0 || hi > self.len() || lo > hi {
            return Err(Error::domain(format!(
                "window {lo}..={hi} outside stored indices 1..={}",
                self.len()
            )));
        }
        let mut best = f64::NEG_INFINITY;
        for nu in lo..=hi {
            let mu = self.exponents[nu - 1];
            if mu <= 0.0 {
                return Err(Error::domain(format!(
                    "exponent μ_{nu} = {mu} is not positive"
                )));
            }
            best = best.max((nu as f64).ln() / mu);
        }
        Ok(best)
    }

    /// Bound on the unstored remainder at real part `sigma` (k-th
    /// derivative), or `None` when no tail model is declared.
    pub fn unstored_tail_bound(&self, sigma: f64, k: u32) -> Option<f64> {
        match self.tail {
            TailModel::None => None,
            TailModel::Quadratic(law) if k == 0 => law
                .tail(self.len(), Complex64::new(sigma, 0.0))
                .ok()
                .map(|(v, e)| v.norm() + e),
            _ => Some(self.model_bound(self.len(), sigma, k)),
        }
    }
}

/// Σ_{ν>n} C ν^p h(μ_ν) with h(μ) = μ^k e^{-σμ} and μ_ν ≥ q log ν + shift,
/// bounded by the integral of the (eventually decreasing) envelope.
fn power_tail_bound(c: f64, p: f64, q: f64, shift: f64, n: usize, sigma: f64, k: u32) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    if n == 0 || sigma <= 0.0 {
        return f64::INFINITY;
    }
    let alpha = q * sigma - p;
    let beta = (alpha - 1.0) / q;
    if !(beta > 0.0) {
        return f64::INFINITY;
    }
    let u0 = q * (n as f64).ln() + shift;
    let kf = k as f64;
    let need = if k == 0 {
        f64::NEG_INFINITY
    } else {
        (kf * q / alpha).max(kf / sigma).max(0.0)
    };
    if u0 < need || (k > 0 && u0 < 0.0) {
        return f64::INFINITY;
    }
    // Γ(k+1, β u0) = k!·Q(k+1, β u0); for k = 0 this is e^{-β u0}, valid for any sign of u0.
    let z = beta * u0;
    let ln_gamma_upper = if k == 0 {
        -z
    } else {
        let q_table = upper_gamma_q_table(z, k as usize);
        ln_factorial(k) + q_table[k as usize].ln()
    };
    let ln_bound = c.ln() - sigma * shift + beta * shift - q.ln() + ln_gamma_upper
        - (kf + 1.0) * beta.ln();
    ln_bound.exp()
}

/// Σ_{j≥0} C·H(m + jδ) with H(μ) = sup_{v≥μ} |v|^k e^{-σv}.
fn geometric_tail_bound(c: f64, delta: f64, m: f64, sigma: f64, k: u32) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    if sigma <= 0.0 {
        return f64::INFINITY;
    }
    if k == 0 {
        return c * (-sigma * m).exp() / -(-sigma * delta).exp_m1();
    }
    let kf = k as f64;
    let peak_at = kf / sigma;
    let h = |v: f64| v.abs().powi(k as i32) * (-sigma * v).exp();
    let envelope = |mu: f64| -> f64 {
        if mu >= peak_at {
            h(mu)
        } else if mu >= 0.0 {
            h(peak_at)
        } else {
            h(mu).max(h(peak_at))
        }
    };
    let mut total = 0.0;
    for j in 0..2_000_000u32 {
        let mu = m + j as f64 * delta;
        let term = c * envelope(mu);
        total += term;
        if mu >= peak_at && mu > 0.0 {
            let r = ((mu + delta) / mu).powi(k as i32) * (-sigma * delta).exp();
            if r < 1.0 && term * r / (1.0 - r) <= 1e-3 * total.max(f64::MIN_POSITIVE) {
                return total + term * r / (1.0 - r);
            }
        }
    }
    f64::INFINITY
}

/// Riemann zeta for real `s > 1/2`, `s ≠ 1`.
pub fn riemann_zeta(s: f64, tol: f64) -> Result<f64> {
    if !(s > 0.5) {
        return Err(Error::domain(format!("riemann_zeta needs s > 0.5, got {s}")));
    }
    if s == 1.0 {
        return Err(Error::domain("riemann_zeta has a pole at s = 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let (v, err) = hurwitz_zeta(Complex64::new(s, 0.0), 1.0)?;
    if err > tol {
        return Err(Error::resource(
            format!("ζ({s}) to tolerance {tol:e}"),
            err,
        ));
    }
    Ok(v.re)
}

// JSON schema: {"exponents":[...], "coefficients":[[re,im],...], "gamma": g, "tail_model": {...}}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum CoefficientJson {
    Pair([f64; 2]),
    Real(f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub exponents: Vec<f64>,
    coefficients: Vec<CoefficientJson>,
    pub gamma: f64,
    #[serde(default)]
    pub tail_model: TailModel,
}

impl From<&GeneralDirichletSeries> for SeriesJson {
    fn from(s: &GeneralDirichletSeries) -> Self {
        SeriesJson {
            exponents: s.exponents.clone(),
            coefficients: s
                .coefficients
                .iter()
                .map(|a| CoefficientJson::Pair([a.re, a.im]))
                .collect(),
            gamma: s.gamma,
            tail_model: s.tail,
        }
    }
}

impl TryFrom<SeriesJson> for GeneralDirichletSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        let coefficients = j
            .coefficients
            .into_iter()
            .map(|c| match c {
                CoefficientJson::Pair([re, im]) => Complex64::new(re, im),
                CoefficientJson::Real(re) => Complex64::new(re, 0.0),
            })
            .collect();
        GeneralDirichletSeries::new(j.exponents, coefficients, j.gamma, j.tail_model)
    }
}

impl GeneralDirichletSeries {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(text)?;
        j.try_into()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series serializes")
    }
}

impl Serialize for GeneralDirichletSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GeneralDirichletSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(deserializer)?;
        GeneralDirichletSeries::try_from(j).map_err(serde::de::Error::custom)
    }
}
