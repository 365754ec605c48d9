//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands
//! on a real interval.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// Gauss weights for nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 30;

fn kronrod<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Ok((kron * half, ((kron - gauss) * half).norm()))
}

fn adapt<F>(f: &F, a: f64, b: f64, tol: f64, depth: u32, out: &mut Vec<Complex64>) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let (value, err) = kronrod(f, a, b)?;
    if err <= tol || depth >= MAX_DEPTH {
        if err > tol && err > 1e3 * tol {
            return Err(Error::resource(
                format!("quadrature on [{a}, {b}] did not converge"),
                err,
            ));
        }
        out.push(value);
        return Ok(err);
    }
    let mid = 0.5 * (a + b);
    let left = adapt(f, a, mid, 0.5 * tol, depth + 1, out)?;
    let right = adapt(f, mid, b, 0.5 * tol, depth + 1, out)?;
    Ok(left + right)
}

/// Pairwise (tree) summation for a fixed, order-independent rounding
/// pattern.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Integral over consecutive panels `[edges[i], edges[i+1]]`; the absolute
/// tolerance is shared among panels in proportion to their width.
/// Returns the value and the accumulated Kronrod error estimate.
pub fn integrate_panels<F>(f: F, edges: &[f64], tol: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if edges.len() < 2 {
        return Err(Error::invalid("quadrature needs at least one panel"));
    }
    let total = edges[edges.len() - 1] - edges[0];
    if !(total > 0.0) || !(tol > 0.0) {
        return Err(Error::invalid("quadrature needs increasing edges and tol > 0"));
    }
    let mut pieces = Vec::with_capacity(edges.len() - 1);
    let mut err = 0.0;
    for w in edges.windows(2) {
        err += adapt(&f, w[0], w[1], tol * (w[1] - w[0]) / total, 0, &mut pieces)?;
    }
    Ok((pairwise_sum(&pieces), err))
}

/// Panel edges covering `[a, b]` with every panel at most `max_width` wide,
/// always including the points of `splits` that fall inside.
pub fn panel_edges(a: f64, b: f64, max_width: f64, splits: &[f64]) -> Vec<f64> {
    let mut anchors = vec![a];
    anchors.extend(splits.iter().copied().filter(|&x| x > a && x < b));
    anchors.push(b);
    anchors.sort_by(f64::total_cmp);
    let mut edges = vec![a];
    for w in anchors.windows(2) {
        let n = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / n as f64;
        for i in 1..n {
            edges.push(w[0] + i as f64 * h);
        }
        edges.push(w[1]);
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let (v, e) = integrate_panels(|x| Ok(Complex64::new(x.powi(5), 0.0)), &[0.0, 2.0], 1e-12).unwrap();
        assert!((v.re - 64.0 / 6.0).abs() < 1e-12);
        assert!(e < 1e-10);
    }

    #[test]
    fn oscillatory_exponential() {
        // ∫_0^{10} e^{3ix} dx = (e^{30i} − 1)/(3i)
        let edges = panel_edges(0.0, 10.0, 0.5, &[]);
        let (v, _) = integrate_panels(|x| Ok(Complex64::new(0.0, 3.0 * x).exp()), &edges, 1e-12).unwrap();
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 3.0);
        assert!((v - exact).norm() < 1e-11);
    }

    #[test]
    fn edges_respect_splits_and_width() {
        let e = panel_edges(-3.0, 3.0, 1.0, &[-1.0, 1.0]);
        assert!(e.contains(&-1.0) && e.contains(&1.0));
        assert!(e.windows(2).all(|w| w[1] - w[0] <= 1.0 + 1e-12 && w[1] > w[0]));
        assert_eq!(*e.first().unwrap(), -3.0);
        assert_eq!(*e.last().unwrap(), 3.0);
    }
}
