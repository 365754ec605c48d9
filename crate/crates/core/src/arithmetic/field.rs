use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::kronecker::kronecker_symbol;
use super::primes::{is_prime, is_squarefree, primes_up_to};
use crate::error::{Error, Result};

/// `Q(√D)` for squarefree `D > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticField {
    d: u64,
    discriminant: u64,
}

impl QuadraticField {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::domain(format!("D = {d} is not a squarefree integer > 1")));
        }
        let discriminant = if d % 4 == 1 { d } else { 4 * d };
        Ok(QuadraticField { d, discriminant })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    /// `χ_Δ(n)`.
    pub fn character(&self, n: u64) -> i8 {
        kronecker_symbol(self.discriminant as i64, n).expect("n ≥ 1 and Δ is a discriminant")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NumberField {
    Rationals,
    Quadratic(QuadraticField),
}

impl FromStr for NumberField {
    type Err = Error;

    /// `Q`, `Q(sqrt:5)` or `Q(sqrt5)`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(NumberField::Rationals);
        }
        let inner = t
            .strip_prefix("Q(sqrt")
            .and_then(|r| r.strip_suffix(')'))
            .map(|r| r.trim_start_matches(':'))
            .ok_or_else(|| Error::invalid(format!("unrecognised field {text:?}; use Q or Q(sqrt:D)")))?;
        let d: u64 = inner
            .parse()
            .map_err(|_| Error::invalid(format!("bad D in {text:?}")))?;
        if d == 1 {
            return Ok(NumberField::Rationals);
        }
        Ok(NumberField::Quadratic(QuadraticField::new(d)?))
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberField::Rationals => write!(f, "Q"),
            NumberField::Quadratic(k) => write!(f, "Q(sqrt:{})", k.d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

pub fn splitting_type(p: u64, k: &QuadraticField) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    Ok(match k.character(p) {
        0 => SplittingType::Ramified,
        1 => SplittingType::Split,
        _ => SplittingType::Inert,
    })
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

/// Number of ideals of norm `p^f`.
pub fn ideal_count(field: &NumberField, p: u64, f: u32) -> Result<u64> {
    check_prime(p)?;
    if f == 0 {
        return Err(Error::domain("f must be at least 1"));
    }
    Ok(match field {
        NumberField::Rationals => 1,
        NumberField::Quadratic(k) => match splitting_type(p, k)? {
            SplittingType::Split => f as u64 + 1,
            SplittingType::Inert => u64::from(f.is_multiple_of(2)),
            SplittingType::Ramified => 1,
        },
    })
}

/// Number of prime ideals of norm `p^f`.
pub fn prime_ideal_count(field: &NumberField, p: u64, f: u32) -> Result<u64> {
    check_prime(p)?;
    Ok(match field {
        NumberField::Rationals => u64::from(f == 1),
        NumberField::Quadratic(k) => match (splitting_type(p, k)?, f) {
            (SplittingType::Split, 1) => 2,
            (SplittingType::Inert, 2) => 1,
            (SplittingType::Ramified, 1) => 1,
            _ => 0,
        },
    })
}

/// Local Euler factor of `ζ_K` at `p`.
pub fn local_factor(field: &NumberField, p: u64, s: f64) -> Result<f64> {
    check_prime(p)?;
    let x = (p as f64).powf(-s);
    Ok(match field {
        NumberField::Rationals => 1.0 / (1.0 - x),
        NumberField::Quadratic(k) => match splitting_type(p, k)? {
            SplittingType::Split => 1.0 / ((1.0 - x) * (1.0 - x)),
            SplittingType::Inert => 1.0 / (1.0 - x * x),
            SplittingType::Ramified => 1.0 / (1.0 - x),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundedValue {
    pub value: f64,
    pub error_bound: f64,
}

/// `Σ_{n>P} −log(1 − n^{-s})` bounded above, `P ≥ 1`.
pub(crate) fn log_tail_bound(prime_bound: u64, s: f64) -> f64 {
    let p = prime_bound.max(1) as f64;
    p.powf(1.0 - s) / ((s - 1.0) * (1.0 - (p + 1.0).powf(-s)))
}

const MAX_PRIME_BOUND: u64 = 100_000_000;

/// Truncated Euler product `∏_{p≤P}` of `ζ_K(s)`. Every local logarithm is
/// positive, so the product undershoots; the bound comes from
/// `log ζ_K − log ∏_{p≤P} ≤ 2·Σ_{n>P} −log(1−n^{-s})`.
///
/// With `prime_bound = None`, `P` is grown until the bound is within `tol`.
pub fn dedekind_zeta_eval(
    field: &NumberField,
    s: f64,
    prime_bound: Option<u64>,
    tol: f64,
) -> Result<BoundedValue> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::domain(format!("Euler product needs s > 1, got {s}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let degree = match field {
        NumberField::Rationals => 1.0,
        NumberField::Quadratic(_) => 2.0,
    };
    let product = |bound: u64| -> Result<BoundedValue> {
        let mut log_sum = 0.0;
        for p in primes_up_to(bound) {
            log_sum += local_factor(field, p, s)?.ln();
        }
        let value = log_sum.exp();
        let b = degree * log_tail_bound(bound, s);
        Ok(BoundedValue {
            value,
            error_bound: value * b.exp_m1(),
        })
    };
    match prime_bound {
        Some(p) => product(p),
        None => {
            let mut p = 1000u64;
            loop {
                let r = product(p)?;
                if r.error_bound <= tol {
                    return Ok(r);
                }
                if p >= MAX_PRIME_BOUND {
                    return Err(Error::resource(
                        format!("Euler product for ζ_K({s}) within {tol:e}"),
                        r.error_bound,
                    ));
                }
                p = (p * 4).min(MAX_PRIME_BOUND);
            }
        }
    }
}
