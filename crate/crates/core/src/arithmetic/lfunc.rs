use serde::{Deserialize, Serialize};

use super::field::{log_tail_bound, prime_ideal_count, NumberField, QuadraticField};
use super::primes::{first_primes, primes_up_to};
use crate::error::{Error, Result};
use crate::supsearch::{sup_abs, DistanceResult, SearchConfig};

pub const DEFAULT_MAX_TERMS: u64 = 200_000_000;
pub const DEFAULT_DISCRIMINANT_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms: u64,
}

/// Character sum data over one period: `χ(0..Δ)`, the mean `c` of the
/// partial sums `A(n)`, and `M₂ = max |Σ_{m≤n} (A(m) − c)|`.
struct PeriodData {
    chi: Vec<i8>,
    mean: f64,
    m2: f64,
}

fn period_data(k: &QuadraticField) -> PeriodData {
    let delta = k.discriminant() as usize;
    let chi: Vec<i8> = (0..delta as u64)
        .map(|n| if n == 0 { 0 } else { k.character(n) })
        .collect();
    let mut a = 0i64;
    let mut partial = Vec::with_capacity(delta);
    for n in 1..=delta {
        a += chi[n % delta] as i64;
        partial.push(a);
    }
    let mean = partial.iter().sum::<i64>() as f64 / delta as f64;
    let mut b = 0.0f64;
    let mut m2 = 0.0f64;
    for &an in &partial {
        b += an as f64 - mean;
        m2 = m2.max(b.abs());
    }
    PeriodData { chi, mean, m2 }
}

/// `L(χ_Δ, s)` for real `s ≥ 1`.
pub fn l_function_eval(k: &QuadraticField, s: f64, tol: f64) -> Result<LValue> {
    l_function_eval_limited(k, s, tol, DEFAULT_MAX_TERMS)
}

/// Partial sum to a multiple `N` of the period, with the tail handled by
/// two rounds of summation by parts: since `A(N) = 0`,
/// `Σ_{n>N} χ(n) n^{-s} = c·(N+1)^{-s} + R` with
/// `|R| ≤ M₂·((N+1)^{-s} − (N+2)^{-s})`.
pub fn l_function_eval_limited(k: &QuadraticField, s: f64, tol: f64, max_terms: u64) -> Result<LValue> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::domain(format!("L-function evaluation needs s ≥ 1, got {s}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let data = period_data(k);
    let delta = data.chi.len() as u64;
    let tail_bound = |n: u64| {
        let x = n as f64;
        data.m2 * ((x + 1.0).powf(-s) - (x + 2.0).powf(-s))
    };
    // Rounding: powf and Neumaier summation both contribute a few ulps per
    // term of Σ n^{-s} ≤ 1 + ln N.
    let rounding = |n: u64| 4.0 * f64::EPSILON * (2.0 + (n as f64).ln());
    let total = |n: u64| tail_bound(n) + rounding(n);

    let max_periods = (max_terms / delta).max(1);
    let mut periods = 1u64;
    while total(periods * delta) > tol {
        if periods >= max_periods {
            return Err(Error::resource(
                format!("L(χ_{delta}, {s}) within {tol:e} using at most {max_terms} terms"),
                total(max_periods * delta),
            ));
        }
        periods = (periods * 2).min(max_periods);
    }
    // Shrink to the fewest periods that still meet the tolerance.
    let (mut lo, mut hi) = (periods / 2 + 1, periods);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if total(mid * delta) <= tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let n_terms = hi * delta;

    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut r = 0usize;
    let d = delta as usize;
    for n in 1..=n_terms {
        r += 1;
        if r == d {
            r = 0;
        }
        let c = data.chi[r];
        if c == 0 {
            continue;
        }
        let t = if s == 1.0 {
            1.0 / n as f64
        } else {
            (-(s * (n as f64).ln())).exp()
        };
        let t = if c > 0 { t } else { -t };
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    let value = sum + comp + data.mean * ((n_terms + 1) as f64).powf(-s);
    Ok(LValue {
        value,
        error_bound: total(n_terms),
        terms: n_terms,
    })
}

fn log_l(field: &NumberField, s: f64, tol: f64) -> Result<(f64, f64)> {
    match field {
        NumberField::Rationals => Ok((0.0, 0.0)),
        NumberField::Quadratic(k) => {
            let l = l_function_eval(k, s, tol)?;
            if l.value <= l.error_bound {
                return Err(Error::PoleOrZero(format!(
                    "L(χ_{}, {s}) is not resolved away from zero",
                    k.discriminant()
                )));
            }
            Ok((l.value.ln(), l.error_bound / (l.value - l.error_bound)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldDistanceConfig {
    /// Interval length: the search runs over `[1 + guard, 1 + a]`.
    pub a: f64,
    pub guard: f64,
    pub grid_points: usize,
    pub refine_tol: f64,
    pub eval_tol: f64,
}

impl Default for FieldDistanceConfig {
    fn default() -> Self {
        FieldDistanceConfig {
            a: 1.0,
            guard: 0.0,
            grid_points: 129,
            refine_tol: 1e-10,
            eval_tol: 1e-10,
        }
    }
}

impl FieldDistanceConfig {
    fn interval(&self) -> Result<(f64, f64)> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::domain(format!("a must be positive, got {}", self.a)));
        }
        if !(self.guard >= 0.0) || self.guard >= self.a {
            return Err(Error::domain(format!(
                "guard {} must lie in [0, a = {})",
                self.guard, self.a
            )));
        }
        if !(self.eval_tol > 0.0) {
            return Err(Error::invalid("eval_tol must be positive"));
        }
        Ok((1.0 + self.guard, 1.0 + self.a))
    }

    fn search(&self) -> SearchConfig {
        SearchConfig {
            grid_points: self.grid_points,
            refine_tol: self.refine_tol,
        }
    }
}

/// `sup |log |ζ_{K₁}(s)/ζ_{K₂}(s)||`. For rational and quadratic fields
/// `ζ_K = ζ·L(χ_Δ, ·)`, so the shared `ζ(s)` cancels and the ratio is
/// `L₁/L₂`, regular down to `s = 1`.
pub fn field_distance(k1: &NumberField, k2: &NumberField, cfg: &FieldDistanceConfig) -> Result<DistanceResult> {
    let (lo, hi) = cfg.interval()?;
    if k1 == k2 {
        return sup_abs(|_| Ok((0.0, 0.0)), lo, hi, &cfg.search());
    }
    sup_abs(
        |s| {
            let (l1, e1) = log_l(k1, s, cfg.eval_tol)?;
            let (l2, e2) = log_l(k2, s, cfg.eval_tol)?;
            Ok((l1 - l2, e1 + e2))
        },
        lo,
        hi,
        &cfg.search(),
    )
}

/// Same distance from truncated Euler products written through prime-ideal
/// counts: `log ζ_{K₁}/ζ_{K₂} = −Σ_{p,f} (P₁(p,f) − P₂(p,f)) log(1 − p^{-fs})`.
/// Needs `guard > 0` since the products diverge at `s = 1`.
pub fn field_distance_euler(
    k1: &NumberField,
    k2: &NumberField,
    prime_bound: u64,
    cfg: &FieldDistanceConfig,
) -> Result<DistanceResult> {
    let (lo, hi) = cfg.interval()?;
    if cfg.guard <= 0.0 {
        return Err(Error::domain("the Euler-product route needs guard > 0"));
    }
    let primes = primes_up_to(prime_bound);
    let mut weights: Vec<(u64, u32, f64)> = Vec::new();
    for &p in &primes {
        for f in 1..=2u32 {
            let w = prime_ideal_count(k1, p, f)? as f64 - prime_ideal_count(k2, p, f)? as f64;
            if w != 0.0 {
                weights.push((p, f, w));
            }
        }
    }
    let nontrivial = [k1, k2]
        .iter()
        .filter(|k| matches!(k, NumberField::Quadratic(_)))
        .count() as f64;
    sup_abs(
        |s| {
            let mut acc = 0.0;
            for &(p, f, w) in &weights {
                acc -= w * (-(p as f64).powf(-(f as f64) * s)).ln_1p();
            }
            Ok((acc, nontrivial * log_tail_bound(prime_bound, s)))
        },
        lo,
        hi,
        &cfg.search(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimorialRow {
    pub i: usize,
    pub d: u64,
    pub discriminant: u64,
    pub l_value: f64,
    pub error_bound: f64,
}

/// `L(χ_{D_i}, 1)` for the primorials `D_i = p₁⋯p_i`, `i = 1..=i_max`.
pub fn primorial_experiment(i_max: usize, tol: f64, discriminant_cap: u64) -> Result<Vec<PrimorialRow>> {
    if i_max == 0 {
        return Err(Error::domain("i_max must be at least 1"));
    }
    let primes = first_primes(i_max);
    let mut d = 1u64;
    let mut rows = Vec::with_capacity(i_max);
    for (idx, &p) in primes.iter().enumerate() {
        d = d
            .checked_mul(p)
            .ok_or_else(|| Error::resource("primorial overflows u64", f64::INFINITY))?;
        let k = QuadraticField::new(d)?;
        if k.discriminant() > discriminant_cap {
            return Err(Error::resource(
                format!(
                    "discriminant {} for i = {} exceeds the cap {discriminant_cap}",
                    k.discriminant(),
                    idx + 1
                ),
                f64::INFINITY,
            ));
        }
        let l = l_function_eval(&k, 1.0, tol)?;
        rows.push(PrimorialRow {
            i: idx + 1,
            d,
            discriminant: k.discriminant(),
            l_value: l.value,
            error_bound: l.error_bound,
        });
    }
    Ok(rows)
}
