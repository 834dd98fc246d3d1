//! Simultaneous polynomial root finding (Aberth–Ehrlich iteration).

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 500;
const STEP_TOLERANCE: f64 = 1e-14;

/// All complex roots of `d_0 + d_1 x + ... + d_k x^k` with `d_k != 0`.
///
/// A root counts as converged once its Aberth correction drops below
/// `1e-14 (1 + |z|)` or the polynomial value sinks to the rounding level of
/// its Horner evaluation (the latter is what terminates multiple roots).
pub fn polynomial_roots(d: &[f64]) -> Result<Vec<Complex64>> {
    let k = d.len() - 1;
    let lead = d[k];
    if k == 0 {
        return Ok(Vec::new());
    }
    if lead == 0.0 {
        return Err(Error::DegenerateDenominator { leading: lead });
    }
    let coeffs: Vec<Complex64> = d.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    if k == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    let deriv: Vec<Complex64> = coeffs.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect();
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();

    let mut z = initial_guesses(&abs_coeffs);
    let mut converged = vec![false; k];
    let mut last_step = f64::INFINITY;

    for _ in 0..MAX_ITERATIONS {
        last_step = 0.0;
        for i in 0..k {
            if converged[i] {
                continue;
            }
            let zi = z[i];
            let p = horner(&coeffs, zi);
            let bound = 8.0 * f64::EPSILON * horner_abs(&abs_coeffs, zi.norm());
            if p.norm() <= bound {
                converged[i] = true;
                continue;
            }
            let dp = horner(&deriv, zi);
            let ratio = p / dp;
            let repulsion: Complex64 = (0..k).filter(|&j| j != i).map(|j| (zi - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] = zi - step;
            let rel = step.norm() / (1.0 + z[i].norm());
            last_step = last_step.max(rel);
            if step.norm() < STEP_TOLERANCE * (1.0 + z[i].norm()) {
                converged[i] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            return Ok(z);
        }
    }
    Err(Error::RootFindingStalled {
        iterations: MAX_ITERATIONS,
        last_step,
    })
}

fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

fn horner_abs(c: &[f64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * r + a)
}

fn initial_guesses(abs_coeffs: &[f64]) -> Vec<Complex64> {
    let k = abs_coeffs.len() - 1;
    // geometric mean of the root moduli of the monic polynomial
    let radius = if abs_coeffs[0] > 0.0 {
        abs_coeffs[0].powf(1.0 / k as f64)
    } else {
        1.0
    };
    (0..k)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / k as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}
