//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss-Chebyshev quadrature for the stored coefficients
/// `a_n = (2/pi) int f(x) T_n(x) / sqrt(1 - x^2) dx`, `n = 0..=n_max`.
pub fn gauss_chebyshev(f: impl Fn(f64) -> f64, n_max: usize, nodes: usize) -> Vec<f64> {
    let mut a = vec![0.0; n_max + 1];
    for i in 0..nodes {
        let theta = PI * (i as f64 + 0.5) / nodes as f64;
        let fx = f(theta.cos());
        for (n, an) in a.iter_mut().enumerate() {
            *an += fx * (n as f64 * theta).cos();
        }
    }
    a.iter().map(|v| 2.0 * v / nodes as f64).collect()
}

pub fn gauss_chebyshev_complex(f: impl Fn(f64) -> Complex64, n_max: usize, nodes: usize) -> Vec<Complex64> {
    let mut a = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for i in 0..nodes {
        let theta = PI * (i as f64 + 0.5) / nodes as f64;
        let fx = f(theta.cos());
        for (n, an) in a.iter_mut().enumerate() {
            *an += fx * (n as f64 * theta).cos();
        }
    }
    a.iter().map(|v| v * (2.0 / nodes as f64)).collect()
}

/// Quadrature with doubling until two successive estimates agree.
pub fn adaptive_gauss_chebyshev(f: impl Fn(f64) -> f64, n_max: usize, tol: f64) -> Vec<f64> {
    let mut nodes = 64;
    let mut prev = gauss_chebyshev(&f, n_max, nodes);
    loop {
        nodes *= 2;
        let next = gauss_chebyshev(&f, n_max, nodes);
        let scale = next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = next.iter().zip(&prev).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if diff <= tol * scale || nodes > 1 << 20 {
            return next;
        }
        prev = next;
    }
}

pub fn central_difference(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Digamma by upward shift to `x >= 12` and the asymptotic series.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let series =
        inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + x.ln() - 0.5 / x - series
}

pub fn rel_diff(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

/// Tolerance used for the printed coefficient tables: relative `1e-10` for
/// magnitudes above `1e-8`, relative `1e-4` below.
pub fn graded_ok(got: f64, want: f64) -> bool {
    let tol = if want.abs() > 1e-8 { 1e-10 } else { 1e-4 };
    rel_diff(got, want) <= tol
}

/// Same sign and within a factor of ten.
pub fn magnitude_ok(got: f64, want: f64) -> bool {
    got.signum() == want.signum() && (got / want).abs() > 0.1 && (got / want).abs() < 10.0
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}

/// `|got - want| <= rel |want| + 64 eps scale`: relative agreement down to the
/// rounding level of the largest coefficient.
pub fn close(got: f64, want: f64, rel: f64, scale: f64) -> bool {
    (got - want).abs() <= rel * want.abs() + 64.0 * f64::EPSILON * scale
}
