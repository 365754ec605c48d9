//! Independent reference values shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

pub const ZETA_1_5: f64 = 2.612_375_348_685_488;
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// ζ(2s) for 2s ∈ {1.5, 2, 3, 4}.
pub fn zeta_even_arg(two_s: f64) -> f64 {
    match two_s {
        1.5 => ZETA_1_5,
        2.0 => PI * PI / 6.0,
        3.0 => ZETA_3,
        4.0 => PI.powi(4) / 90.0,
        _ => panic!("no tabulated ζ({two_s})"),
    }
}

/// Jacobi symbol (a/n) for odd n > 0.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (Δ/r) for a fundamental discriminant Δ > 0.
pub fn kronecker(delta: i64, r: u64) -> i8 {
    if r == 0 {
        return i8::from(delta.abs() == 1);
    }
    let mut r = r;
    let mut t = 1i8;
    while r.is_multiple_of(2) {
        r /= 2;
        t *= match delta.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    t * jacobi(delta, r)
}

pub fn discriminant(d: u64) -> u64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// L(χ_Δ, 1) = −Δ^{-1/2} Σ_{r<Δ} χ(r) log sin(πr/Δ), Δ > 0.
pub fn l_at_one_sine(delta: u64) -> f64 {
    let mut acc = 0.0;
    for r in 1..delta {
        let c = kronecker(delta as i64, r);
        if c != 0 {
            acc += c as f64 * (PI * r as f64 / delta as f64).sin().ln();
        }
    }
    -acc / (delta as f64).sqrt()
}

/// Class number and fundamental unit ε = x + y√d for small real fields.
pub fn class_number_unit(d: u64) -> Option<(u32, f64, f64)> {
    match d {
        2 => Some((1, 1.0, 1.0)),
        5 => Some((1, 0.5, 0.5)),
        6 => Some((1, 5.0, 2.0)),
        30 => Some((2, 11.0, 2.0)),
        210 => Some((4, 29.0, 2.0)),
        _ => None,
    }
}

/// L(χ_Δ, 1) = 2h log ε / √Δ.
pub fn l_at_one_class_number(d: u64) -> Option<f64> {
    let (h, x, y) = class_number_unit(d)?;
    let eps = x + y * (d as f64).sqrt();
    Some(2.0 * h as f64 * eps.ln() / (discriminant(d) as f64).sqrt())
}
