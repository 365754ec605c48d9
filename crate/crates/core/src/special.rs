//! Special-function kernels shared by the evaluators: the Hurwitz zeta
//! function by Euler–Maclaurin summation, compensated complex summation and
//! integer-order incomplete gamma ratios.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2j} / (2j)!` for `j = 1..=16`.
const BERNOULLI_OVER_FACTORIAL: [f64; 16] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
];

const EM_ORDER: usize = 15;

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl std::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// `x^{-w}` for real `x > 0`.
#[inline]
pub fn real_pow_neg(x: f64, w: Complex64) -> Complex64 {
    (-w * x.ln()).exp()
}

/// Hurwitz zeta `ζ(w, a) = Σ_{n≥0} (a+n)^{-w}` for real `a > 0` and complex
/// `w ≠ 1`, returned with an error bound.
///
/// Uses `M` direct terms followed by the Euler–Maclaurin expansion to order
/// `B_30`; the bound is the standard remainder estimate plus a rounding
/// allowance proportional to the absolute mass of the summands.
pub fn hurwitz_zeta(w: Complex64, a: f64) -> Result<(Complex64, f64)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::domain("Hurwitz zeta argument is not finite"));
    }
    if (w - 1.0).norm() < 1e-300 {
        return Err(Error::domain("Hurwitz zeta pole at w = 1"));
    }
    let mut shift = ((w.norm().max(1.0) + 12.0) - a).ceil().max(0.0) as usize;
    let mut best = hurwitz_em(w, a, shift);
    // Widen the direct range while the truncation remainder dominates rounding.
    for _ in 0..6 {
        if best.1 <= best.2 {
            break;
        }
        shift = shift * 2 + 16;
        let next = hurwitz_em(w, a, shift);
        if next.1 + next.2 < best.1 + best.2 {
            best = next;
        }
    }
    Ok((best.0, best.1 + best.2))
}

/// Returns (value, truncation remainder bound, rounding allowance).
fn hurwitz_em(w: Complex64, a: f64, shift: usize) -> (Complex64, f64, f64) {
    let mut acc = CompensatedSum::default();
    let mut mass = 0.0;
    for n in 0..shift {
        let t = real_pow_neg(a + n as f64, w);
        mass += t.norm();
        acc.add(t);
    }
    let x = a + shift as f64;
    let x_pow = real_pow_neg(x, w);
    let head = x * x_pow / (w - 1.0);
    let half = 0.5 * x_pow;
    mass += head.norm() + half.norm();
    acc.add(head);
    acc.add(half);

    let inv_x2 = 1.0 / (x * x);
    let mut rising = w;
    let mut xp = x_pow / x;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().take(EM_ORDER).enumerate() {
        let term = *coeff * rising * xp;
        mass += term.norm();
        acc.add(term);
        let k = 2.0 * (j as f64 + 1.0);
        rising *= (w + (k - 1.0)) * (w + k);
        xp *= inv_x2;
    }
    // `rising` is now (w)_{2J+1}, `xp` is x^{-w-2J-1}.
    let order = 2.0 * EM_ORDER as f64 + 1.0;
    let next = (BERNOULLI_OVER_FACTORIAL[EM_ORDER] * rising * xp).norm();
    let denom = w.re + order;
    let remainder = if denom > 0.0 {
        next * (w + order).norm() / denom
    } else {
        f64::INFINITY
    };
    let rounding = 8.0 * f64::EPSILON * mass;
    (acc.value(), remainder, rounding)
}

/// `ln k!`.
pub fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

/// Regularized upper incomplete gamma `Q(k+1, x) = e^{-x} Σ_{j≤k} x^j/j!`
/// for all `k = 0..=k_max`, at real `x ≥ 0`.
pub fn upper_gamma_q_table(x: f64, k_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k_max + 1);
    if x == f64::INFINITY {
        out.resize(k_max + 1, 0.0);
        return out;
    }
    // Terms are formed in log space so large x does not underflow e^{-x}
    // before the polynomial factor catches up.
    let lx = if x > 0.0 { x.ln() } else { f64::NEG_INFINITY };
    let mut acc = 0.0;
    let mut ln_fact = 0.0;
    for j in 0..=k_max {
        if j > 0 {
            ln_fact += (j as f64).ln();
        }
        let term = if j == 0 {
            (-x).exp()
        } else if x == 0.0 {
            0.0
        } else {
            (j as f64 * lx - x - ln_fact).exp()
        };
        acc += term;
        out.push(acc.min(1.0));
    }
    out
}

/// `(1 - e^{-z}) / z`, accurate near `z = 0`.
pub fn one_minus_exp_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // 1 - z/2 + z²/6 - z³/24
        Complex64::new(1.0, 0.0) - z / 2.0 + z * z / 6.0 - z * z * z / 24.0
    } else {
        (Complex64::new(1.0, 0.0) - (-z).exp()) / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hurwitz_at_one_is_riemann_zeta() {
        let (v, err) = hurwitz_zeta(c(2.0), 1.0).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14, "{v}");
        assert!(err < 1e-13);
        let (v4, _) = hurwitz_zeta(c(4.0), 1.0).unwrap();
        assert!((v4.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn hurwitz_shift_identity() {
        // ζ(w, a) = a^{-w} + ζ(w, a + 1), complex w
        let w = Complex64::new(1.7, 3.2);
        let (lhs, _) = hurwitz_zeta(w, 0.3).unwrap();
        let (rhs, _) = hurwitz_zeta(w, 1.3).unwrap();
        let diff = lhs - real_pow_neg(0.3, w) - rhs;
        assert!(diff.norm() < 1e-13, "{diff}");
    }

    #[test]
    fn hurwitz_half_gives_dirichlet_lambda() {
        // ζ(w, 1/2) = (2^w - 1) ζ(w)
        let w = c(3.0);
        let (half, _) = hurwitz_zeta(w, 0.5).unwrap();
        let (one, _) = hurwitz_zeta(w, 1.0).unwrap();
        assert!((half.re - 7.0 * one.re).abs() < 1e-13);
    }

    #[test]
    fn hurwitz_rejects_pole_and_bad_shift() {
        assert!(hurwitz_zeta(c(1.0), 1.0).is_err());
        assert!(hurwitz_zeta(c(2.0), 0.0).is_err());
    }

    #[test]
    fn gamma_q_small_cases() {
        let q = upper_gamma_q_table(2.0, 2);
        let e = (-2.0f64).exp();
        assert!((q[0] - e).abs() < 1e-16);
        assert!((q[1] - 3.0 * e).abs() < 1e-15);
        assert!((q[2] - 5.0 * e).abs() < 1e-15);
        assert_eq!(upper_gamma_q_table(0.0, 3), vec![1.0; 4]);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let acc: CompensatedSum = [1e16, 1.0, -1e16].iter().map(|&x| c(x)).collect();
        assert_eq!(acc.value().re, 1.0);
    }

    #[test]
    fn one_minus_exp_over_is_continuous() {
        let small = one_minus_exp_over(c(1e-5));
        let direct = (1.0 - (-1e-5f64).exp()) / 1e-5;
        assert!((small.re - direct).abs() < 1e-10);
        let big = one_minus_exp_over(c(2.0));
        assert!((big.re - (1.0 - (-2.0f64).exp()) / 2.0).abs() < 1e-15);
    }
}
