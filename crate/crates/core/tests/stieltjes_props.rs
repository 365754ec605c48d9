use num_complex::Complex64;
use proptest::prelude::*;
use zetametric::stieltjes::{
    lip_norm_estimate, log_grid, step_from_series, wid_norm_estimate, LipConfig, LipTarget,
    PiecewiseLinearFunction, Scaled, SeriesTransform,
};
use zetametric::{GeneralDirichletSeries, TailModel};

fn series(mu: Vec<f64>, a: Vec<f64>) -> GeneralDirichletSeries {
    GeneralDirichletSeries::new(mu, a.into_iter().map(|x| Complex64::new(x, 0.0)).collect(), 0.0, TailModel::None)
        .unwrap()
}

fn ln_factorial(k: u32) -> f64 {
    (1..=k).map(|j| (j as f64).ln()).sum()
}

const LIP: LipConfig = LipConfig {
    pair_budget: 20_000,
    delta_min: 1e-6,
    seed: 11,
};

#[test]
fn ramp_is_an_isometry() {
    let ramp = PiecewiseLinearFunction::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
    let lip = lip_norm_estimate(&ramp, 0.0, &LIP).unwrap();
    let wid = wid_norm_estimate(&ramp, 0.0, 60, &log_grid(1e-2, 1e3, 64)).unwrap();
    assert!((lip.value - 1.0).abs() < 1e-3 && !lip.saturated);
    assert!((wid.value - 1.0).abs() < 1e-3 && !wid.saturated);
    assert!((lip.value - wid.value).abs() <= 2e-2);
}

#[test]
fn sampled_saturating_exponential_is_an_isometry() {
    let ts: Vec<f64> = (0..=1000).map(|i| 20.0 * i as f64 / 1000.0).collect();
    let ys: Vec<f64> = ts.iter().map(|t| -(-t).exp_m1()).collect();
    let f = PiecewiseLinearFunction::interpolate(&ts, &ys).unwrap();
    let lip = lip_norm_estimate(&f, 0.0, &LIP).unwrap();
    let wid = wid_norm_estimate(&f, 0.0, 60, &log_grid(1e-2, 1e4, 96)).unwrap();
    assert!((lip.value - wid.value).abs() <= 2e-2, "lip {} wid {}", lip.value, wid.value);
    assert!((lip.value - 1.0).abs() < 2e-2);
}

#[test]
fn wid_terms_reproduce_from_derivatives() {
    let d = series(vec![0.3, 1.0, 2.5], vec![1.0, -2.0, 0.5]);
    let grid = log_grid(0.1, 200.0, 40);
    let e = wid_norm_estimate(&SeriesTransform { series: &d, tol: 0.0 }, 0.0, 200, &grid).unwrap();
    assert!(e.value.is_finite() && e.value > 0.0);
    let (s, k) = e.witness;
    let k = k as u32;
    let direct = d.derivative_eval(Complex64::new(s, 0.0), k, 0.0).unwrap().value.norm();
    let term = ((k as f64 + 1.0) * s.ln() - ln_factorial(k) + direct.ln()).exp();
    assert!((term - e.value).abs() <= 1e-10 * e.value, "{term} vs {}", e.value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_round_trip(
        gaps in prop::collection::vec(0.01f64..1.0, 1..40),
        coefs in prop::collection::vec(-5.0f64..5.0, 40),
        sr in 0.01f64..5.0,
        si in -20.0f64..20.0,
    ) {
        let mut m = 0.0;
        let mu: Vec<f64> = gaps.iter().map(|g| { m += g; m }).collect();
        let d = series(mu.clone(), coefs[..mu.len()].to_vec());
        let step = step_from_series(&d, None).unwrap();
        let s = Complex64::new(sr, si);
        prop_assert_eq!(step.transform(s), d.eval(s, 0.0).unwrap().value);
    }

    #[test]
    fn lip_values_are_achieved_quotients(
        breaks in prop::collection::vec(0.05f64..2.0, 1..12),
        slopes in prop::collection::vec(-3.0f64..3.0, 13),
        omega in 0.0f64..1.0,
        seed in 0u64..1000,
    ) {
        let mut b = vec![0.0];
        for g in &breaks {
            b.push(b.last().unwrap() + g);
        }
        let f = PiecewiseLinearFunction::new(b.clone(), slopes[..b.len()].to_vec()).unwrap();
        let cfg = LipConfig { pair_budget: 2000, delta_min: 1e-4, seed };
        let e = lip_norm_estimate(&f, omega, &cfg).unwrap();
        let (s, t) = e.witness;
        if e.value > 0.0 {
            let q = (f.eval(t) - f.eval(s)).abs() / ((t - s) * (omega * t).exp());
            prop_assert_eq!(q, e.value);
        }
        // The true sup is at most the largest slope.
        let max_slope = f.slopes().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        prop_assert!(e.value <= max_slope * (1.0 + 1e-9));
        prop_assert_eq!(lip_norm_estimate(&f, omega, &cfg).unwrap(), e);
    }

    #[test]
    fn norms_scale_linearly(
        c in -10.0f64..10.0,
        coefs in prop::collection::vec(-2.0f64..2.0, 6),
    ) {
        let mu: Vec<f64> = (1..=6).map(|k| k as f64 * 0.4).collect();
        let d = series(mu, coefs);
        let step = step_from_series(&d, None).unwrap();
        let cfg = LipConfig { pair_budget: 500, delta_min: 1e-3, seed: 3 };
        let base = lip_norm_estimate(&step, 0.2, &cfg).unwrap().value;
        let scaled = lip_norm_estimate(&Scaled(c, &step), 0.2, &cfg).unwrap().value;
        prop_assert!((scaled - c.abs() * base).abs() <= 1e-13 * (1.0 + c.abs() * base));

        let grid = log_grid(0.3, 50.0, 20);
        let w = wid_norm_estimate(&SeriesTransform { series: &d, tol: 0.0 }, 0.2, 20, &grid).unwrap().value;
        let dc = d.scaled(c);
        let wc = wid_norm_estimate(&SeriesTransform { series: &dc, tol: 0.0 }, 0.2, 20, &grid).unwrap().value;
        prop_assert!((wc - c.abs() * w).abs() <= 1e-12 * (1.0 + c.abs() * w));
    }
}

#[test]
fn step_estimates_saturate() {
    let d = series(vec![1.0], vec![1.0]);
    let step = step_from_series(&d, None).unwrap();
    let lip = lip_norm_estimate(&step, 0.0, &LIP).unwrap();
    assert!(lip.saturated);
    assert!((lip.value * LIP.delta_min - 1.0).abs() < 1e-6);
    assert_eq!(step.break_locations(), vec![1.0]);
}
