use crate::error::{Error, Result};

/// Whether `delta` is the discriminant of a quadratic field (or 1).
pub fn is_fundamental_discriminant(delta: i64) -> bool {
    use super::primes::is_squarefree;
    if delta == 1 {
        return true;
    }
    let m = delta.rem_euclid(4);
    if m == 1 {
        return delta != 1 && is_squarefree(delta.unsigned_abs());
    }
    if m == 0 {
        let d = delta / 4;
        let r = d.rem_euclid(4);
        return (r == 2 || r == 3) && is_squarefree(d.unsigned_abs());
    }
    false
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
fn jacobi(a: i64, n: u64) -> i8 {
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(Δ/n)` for a discriminant `Δ ≡ 0, 1 (mod 4)`.
pub fn kronecker_symbol(delta: i64, n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("Kronecker symbol needs n ≥ 1"));
    }
    if !matches!(delta.rem_euclid(4), 0 | 1) {
        return Err(Error::domain(format!("{delta} is not ≡ 0, 1 mod 4")));
    }
    let twos = n.trailing_zeros();
    let odd = n >> twos;
    let mut result = 1i8;
    if twos > 0 {
        let two = match delta.rem_euclid(8) {
            0 | 4 => 0,
            1 | 7 => 1,
            _ => -1,
        };
        if two == 0 {
            return Ok(0);
        }
        if twos % 2 == 1 {
            result = two;
        }
    }
    Ok(result * jacobi(delta, odd))
}
