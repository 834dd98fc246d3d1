//! Polynomial approximations `p = b_0 T_0 + ... + b_k T_k` of a function `f`
//! with small relative error.
//!
//! [`newton_fit`] drives the coefficients `a_1..a_k` of the truncated
//! quotient `f/p = sum' a_n T_n` to zero (and `a_0` to 2) by Newton's method;
//! [`equilibrate`] then levels the alternating extrema of `R = f/p - 1`.
//!
//! `b_0` is held at `f_0/2` throughout, so the stored `b.coeffs()[0]` is the
//! stored `f_0` bit for bit.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::series::{Basis, ChebSeries};
use crate::truncated::{self, FactoredSystem};

/// Parameters of a relative-error fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitConfig {
    /// Degree of the fitted polynomial.
    pub k: usize,
    /// Truncation index of the quotient system, at least `2k`.
    pub n: usize,
    /// Target for `max |a_1..a_k|` and `|a_0 - 2|`.
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub equilibrate_iters: usize,
    /// Number of uniform sample points used to bracket extrema.
    pub extremum_grid: usize,
}

impl FitConfig {
    /// Defaults: `N = 2k + 8`, tolerance `1e-14`, 8 Newton iterations,
    /// 4 equilibration passes on a 4001-point grid.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            n: 2 * k + 8,
            newton_tol: 1e-14,
            max_newton_iters: 8,
            equilibrate_iters: 4,
            extremum_grid: 4001,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_newton_iters(mut self, iters: usize) -> Self {
        self.max_newton_iters = iters;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.newton_tol = tol;
        self
    }

    pub fn with_equilibrate_iters(mut self, iters: usize) -> Self {
        self.equilibrate_iters = iters;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 * self.k {
            return Err(Error::Contract(format!(
                "truncation index N = {} must be at least 2k = {}",
                self.n,
                2 * self.k
            )));
        }
        if !(self.newton_tol > 0.0) {
            return Err(Error::Contract("newton_tol must be positive".into()));
        }
        if self.extremum_grid < 2 {
            return Err(Error::Contract("extremum_grid needs at least 2 points".into()));
        }
        Ok(())
    }
}

/// Outcome of [`newton_fit`] or [`equilibrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Fitted polynomial, degree `k`, stored unhalved.
    pub b: ChebSeries,
    /// Quotient coefficients `a_0..a_N` of `f/p` (`a_0` near 2).
    pub residual: ChebSeries,
    /// `a - (2, 0, ..., 0)`, solved for directly and therefore accurate far
    /// below the rounding level of `a_0`.
    pub deviation: ChebSeries,
    /// `max(|a_0 - 2|, |a_1|, ..., |a_k|)` before each Newton update and after
    /// the last one.
    pub history: Vec<f64>,
    /// `sum' |a_n| - 1`, the estimated maximum relative error.
    pub relerr_estimate: f64,
    /// Largest `|R|` over the located extrema: the starting value, then one
    /// entry per accepted equilibration pass. Empty after [`newton_fit`].
    pub peak_history: Vec<f64>,
}

impl FitResult {
    /// `max |a_1..a_k|` and `|a_0 - 2|` of the final iterate.
    pub fn target_error(&self) -> f64 {
        self.history.last().copied().unwrap_or(f64::INFINITY)
    }
}

struct Evaluation {
    fac: FactoredSystem,
    deviation: Vec<f64>,
}

fn evaluate(f: &ChebSeries, b: &ChebSeries, n: usize) -> Result<Evaluation> {
    let sys = truncated::build_matrix(b, n)?;
    let fac = truncated::factor(&sys)?;
    let deviation = fac.solve(&truncated::deviation_rhs(f, b, n));
    Ok(Evaluation { fac, deviation })
}

fn target_error(dev: &[f64], k: usize) -> f64 {
    dev.iter().take(k + 1).fold(0.0, |m, v| m.max(v.abs()))
}

/// `sum' |a_n| - 1` from the deviation `a - 2 e_0`.
fn relerr_from_deviation(dev: &[f64]) -> f64 {
    let a0 = 2.0 + dev[0];
    let head = if a0 >= 0.0 { 0.5 * dev[0] } else { 0.5 * a0.abs() - 1.0 };
    head + dev[1..].iter().map(|v| v.abs()).sum::<f64>()
}

fn with_deviation(basis: Basis, dev: &[f64]) -> ChebSeries {
    let mut a = dev.to_vec();
    a[0] += 2.0;
    ChebSeries::new(basis, a)
}

/// Derivatives `d a_r / d b_j` for `j = 1..k` given a factored system and
/// its solution `a`.
fn jacobian_factored(fac: &FactoredSystem, a_hat: &[f64], k: usize) -> DMatrix<f64> {
    let n = a_hat.len() - 1;
    let a = |i: usize| if i <= n { a_hat[i] } else { 0.0 };
    let mut jac = DMatrix::zeros(n + 1, k);
    for j in 1..=k {
        let rhs: Vec<f64> = (0..=n)
            .map(|r| if r == 0 { -a(j) } else { -(a(r + j) + a(r.abs_diff(j))) })
            .collect();
        let col = fac.solve(&rhs);
        jac.set_column(j - 1, &DVector::from_vec(col));
    }
    jac
}

/// `(N+1) x k` matrix of `d a_r / d b_j`, `j = 1..k`; the column for `b_0`
/// is omitted.
pub fn jacobian(b: &ChebSeries, a_hat: &ChebSeries, n: usize, k: usize) -> Result<DMatrix<f64>> {
    let sys = truncated::build_matrix(b, n)?;
    let fac = truncated::factor(&sys)?;
    Ok(jacobian_factored(&fac, &a_hat.resized(n).into_coeffs(), k))
}

fn check_target(f: &ChebSeries) -> Result<()> {
    if f.get(0) == 0.0 {
        return Err(Error::Contract(
            "f_0 = 0: the fit keeps b_0 = f_0/2 and needs it nonzero".into(),
        ));
    }
    Ok(())
}

/// Newton fit from the truncation `b_j = f_j` (`b_0 = f_0/2`).
///
/// `f` must not vanish on the domain; functions with zeros at the ends (such
/// as `cos(pi x/2)`) have to be divided by a factor carrying those zeros first.
pub fn newton_fit(f: &ChebSeries, cfg: &FitConfig) -> Result<FitResult> {
    check_target(f)?;
    let start = f.resized(cfg.k);
    newton_fit_from(f, &start, cfg)
}

/// Newton fit from a given start polynomial; its `b_0` is replaced by `f_0/2`.
pub fn newton_fit_from(f: &ChebSeries, start: &ChebSeries, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    check_target(f)?;
    f.check_same_basis(start)?;
    let k = cfg.k;
    let n = cfg.n;
    let mut coeffs = start.resized(k).into_coeffs();
    coeffs[0] = f.get(0);
    let mut b = ChebSeries::new(f.basis(), coeffs);
    let mut history = Vec::new();
    let mut iterations = 0;

    loop {
        let eval = evaluate(f, &b, n)?;
        let err = target_error(&eval.deviation, k);
        history.push(err);
        if err <= cfg.newton_tol || iterations == cfg.max_newton_iters || k == 0 {
            return Ok(FitResult {
                residual: with_deviation(f.basis(), &eval.deviation),
                deviation: ChebSeries::new(f.basis(), eval.deviation.clone()),
                relerr_estimate: relerr_from_deviation(&eval.deviation),
                b,
                history,
                peak_history: Vec::new(),
            });
        }
        let a_hat = with_deviation(f.basis(), &eval.deviation).into_coeffs();
        let jac = jacobian_factored(&eval.fac, &a_hat, k);
        let square = jac.rows(1, k).into_owned();
        let rhs = DVector::from_iterator(k, eval.deviation[1..=k].iter().map(|v| -v));
        let delta = square.lu().solve(&rhs).filter(|d| d.iter().all(|v| v.is_finite()));
        let Some(delta) = delta else {
            return Err(Error::StalledFit {
                iterations,
                last_b: b.into_coeffs(),
            });
        };
        let mut next = b.clone().into_coeffs();
        for j in 1..=k {
            next[j] += delta[j - 1];
        }
        b = ChebSeries::new(f.basis(), next);
        iterations += 1;
    }
}

/// `R(x) = f(x)/p(x) - 1` at each `x`, with `f` truncated at index `n`.
///
/// Computed as `(f - p)(x) / p(x)` so that tiny relative errors are not lost
/// to cancellation.
pub fn relative_error_curve(f: &ChebSeries, b: &ChebSeries, n: usize, xs: &[f64]) -> Result<Vec<f64>> {
    f.check_same_basis(b)?;
    let diff = f.resized(n.max(b.degree())).sub(b)?;
    curve(|x| diff.eval(x), b, xs)
}

/// `R(x) = target(x)/p(x) - 1` for a directly evaluated target function.
pub fn relative_error_curve_fn(target: impl Fn(f64) -> f64, b: &ChebSeries, xs: &[f64]) -> Result<Vec<f64>> {
    curve(|x| target(x) - b.eval(x), b, xs)
}

fn curve(numerator: impl Fn(f64) -> f64, b: &ChebSeries, xs: &[f64]) -> Result<Vec<f64>> {
    let floor = 64.0 * f64::EPSILON * b.primed_abs_sum();
    let mut out = Vec::with_capacity(xs.len());
    let mut last: Option<(f64, f64)> = None;
    for &x in xs {
        let p = b.eval(x);
        if p.abs() <= floor {
            return Err(Error::SingularPoint { x });
        }
        if let Some((x0, p0)) = last {
            if p0.signum() != p.signum() {
                return Err(Error::SingularPoint {
                    x: bisect_root(b, x0, x),
                });
            }
        }
        last = Some((x, p));
        out.push(numerator(x) / p);
    }
    Ok(out)
}

fn bisect_root(b: &ChebSeries, mut lo: f64, mut hi: f64) -> f64 {
    let s_lo = b.eval(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if b.eval(mid).signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `count` equally spaced points covering the basis domain, endpoints included.
pub fn uniform_grid(basis: Basis, count: usize) -> Vec<f64> {
    let (lo, hi) = basis.domain();
    if count == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}

/// A local extremum of the relative error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Alternating extrema of `R`, endpoints included, located on a uniform grid
/// and refined by a parabola through each bracketing triple.
pub fn locate_extrema(f: &ChebSeries, b: &ChebSeries, n: usize, grid: usize) -> Result<Vec<Extremum>> {
    let xs = uniform_grid(b.basis(), grid);
    let r = relative_error_curve(f, b, n, &xs)?;
    let diff = f.resized(n.max(b.degree())).sub(b)?;
    let eval = |x: f64| diff.eval(x) / b.eval(x);
    let m = xs.len();
    let mut found = Vec::new();
    found.push(Extremum { x: xs[0], value: r[0] });
    for i in 1..m.saturating_sub(1) {
        let (l, c, h) = (r[i - 1], r[i], r[i + 1]);
        let is_max = c >= l && c >= h && (c > l || c > h);
        let is_min = c <= l && c <= h && (c < l || c < h);
        if !(is_max || is_min) {
            continue;
        }
        let mut best = Extremum { x: xs[i], value: c };
        let denom = l - 2.0 * c + h;
        if denom != 0.0 {
            let step = xs[i + 1] - xs[i];
            let x = xs[i] + 0.5 * step * (l - h) / denom;
            if x > xs[i - 1] && x < xs[i + 1] {
                let v = eval(x);
                if v.abs() > best.value.abs() && v.signum() == c.signum() {
                    best = Extremum { x, value: v };
                }
            }
        }
        found.push(best);
    }
    if m > 1 {
        found.push(Extremum {
            x: xs[m - 1],
            value: r[m - 1],
        });
    }
    // keep the largest of consecutive same-signed extrema
    let mut alternating: Vec<Extremum> = Vec::with_capacity(found.len());
    for e in found {
        if e.value == 0.0 {
            continue;
        }
        match alternating.last_mut() {
            Some(last) if last.value.signum() == e.value.signum() => {
                if e.value.abs() > last.value.abs() {
                    *last = e;
                }
            }
            _ => alternating.push(e),
        }
    }
    Ok(alternating)
}

/// Indices `j >= 1` that the fit may change: those matching the parity of
/// `f` when `f` is even or odd.
fn free_indices(f: &ChebSeries, k: usize) -> Vec<usize> {
    let even = f.has_zero_parity(true);
    let odd = f.has_zero_parity(false);
    (1..=k)
        .filter(|&j| !(even && j % 2 == 1) && !(odd && j % 2 == 0))
        .collect()
}

/// One levelling pass: extrema abscissae frozen, every extremum pushed to
/// `+-mean` to first order in the coefficient corrections.
fn equilibrate_step(b: &ChebSeries, extrema: &[Extremum], free: &[usize]) -> Option<ChebSeries> {
    let mean = extrema.iter().map(|e| e.value.abs()).sum::<f64>() / extrema.len() as f64;
    let rows = extrema.len();
    let cols = free.len();
    let mut a = DMatrix::zeros(rows, cols);
    let mut rhs = DVector::zeros(rows);
    for (i, e) in extrema.iter().enumerate() {
        let p = b.eval(e.x);
        let t = b.basis().to_standard(e.x);
        for (c, &j) in free.iter().enumerate() {
            // dR/db_j = -(1 + R) T_j / p
            let tj = (j as f64 * t.clamp(-1.0, 1.0).acos()).cos();
            a[(i, c)] = -(1.0 + e.value) * tj / p;
        }
        rhs[i] = e.value.signum() * mean - e.value;
    }
    let delta = a.svd(true, true).solve(&rhs, 1e-14).ok()?;
    if !delta.iter().all(|v| v.is_finite()) {
        return None;
    }
    let mut next = b.clone().into_coeffs();
    for (c, &j) in free.iter().enumerate() {
        next[j] += delta[c];
    }
    Some(ChebSeries::new(b.basis(), next))
}

fn peak_of(extrema: &[Extremum]) -> f64 {
    extrema.iter().fold(0.0, |m, e| m.max(e.value.abs()))
}

/// Levels the alternating extrema of `R` towards their mean magnitude.
///
/// Each pass relocates the extrema, solves the linearized levelling system
/// in the least-squares sense and keeps the update only if the largest `|R|`
/// shrinks. `relerr_estimate` is recomputed but not used for acceptance:
/// levelling spreads the error over the tail coefficients, so the bound
/// `sum' |a_n| - 1` typically grows while the true maximum falls. Stops early
/// once an update is rejected.
pub fn equilibrate(f: &ChebSeries, start: &FitResult, cfg: &FitConfig) -> Result<FitResult> {
    cfg.validate()?;
    check_target(f)?;
    let free = free_indices(f, cfg.k);
    let mut current = start.clone();
    let mut extrema = locate_extrema(f, &current.b, cfg.n, cfg.extremum_grid)?;
    let needed = free.len() + 1;
    if extrema.len() < needed {
        return Err(Error::NotEquioscillating {
            found: extrema.len(),
            needed,
        });
    }
    current.peak_history = vec![peak_of(&extrema)];
    for _ in 0..cfg.equilibrate_iters {
        let peak = peak_of(&extrema);
        let Some(b) = equilibrate_step(&current.b, &extrema, &free) else {
            break;
        };
        let eval = evaluate(f, &b, cfg.n)?;
        let estimate = relerr_from_deviation(&eval.deviation);
        let next_extrema = match locate_extrema(f, &b, cfg.n, cfg.extremum_grid) {
            Ok(e) => e,
            Err(_) => break,
        };
        let next_peak = peak_of(&next_extrema);
        if next_peak >= peak {
            break;
        }
        let mut history = current.history.clone();
        history.push(target_error(&eval.deviation, cfg.k));
        let mut peak_history = current.peak_history.clone();
        peak_history.push(next_peak);
        current = FitResult {
            residual: with_deviation(f.basis(), &eval.deviation),
            deviation: ChebSeries::new(f.basis(), eval.deviation),
            relerr_estimate: estimate,
            b,
            history,
            peak_history,
        };
        extrema = next_extrema;
        if extrema.len() < needed {
            break;
        }
    }
    Ok(current)
}
