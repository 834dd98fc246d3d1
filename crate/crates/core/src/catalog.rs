//! Built-in Chebyshev expansions of the reference functions.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partial_fractions;
use crate::series::{Basis, ChebSeries};
use crate::special;

/// A named expansion with the constants that pin it down.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub basis: Basis,
    pub description: &'static str,
    generator: fn(usize) -> Vec<f64>,
    pub anchors: &'static [(&'static str, f64)],
}

impl CatalogEntry {
    /// Coefficients `f_0..f_{n_max}`.
    pub fn generate(&self, n_max: usize) -> ChebSeries {
        let mut c = (self.generator)(n_max);
        c.truncate(n_max + 1);
        ChebSeries::new(self.basis, c)
    }
}

const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "sinc_pi2",
        basis: Basis::Standard,
        description: "sin(pi x/2)/x on [-1, 1]",
        generator: sinc_pi2,
        anchors: &[],
    },
    CatalogEntry {
        name: "cos_pi2",
        basis: Basis::Standard,
        description: "cos(pi x/2) on [-1, 1]",
        generator: cos_pi2,
        anchors: &[],
    },
    CatalogEntry {
        name: "cos_pi2_lifted",
        basis: Basis::Standard,
        description: "cos(pi x/2)/(1 - x^2) on [-1, 1]",
        generator: cos_pi2_lifted,
        anchors: &[],
    },
    CatalogEntry {
        name: "exp_std",
        basis: Basis::Standard,
        description: "exp(x) on [-1, 1]",
        generator: exp_std,
        anchors: &[],
    },
    CatalogEntry {
        name: "exp_shifted",
        basis: Basis::Shifted,
        description: "exp(x) on [0, 1]",
        generator: exp_shifted,
        anchors: &[],
    },
    CatalogEntry {
        name: "j0_pi2",
        basis: Basis::Standard,
        description: "J_0(pi x/2) on [-1, 1]",
        generator: j0_pi2,
        anchors: &[],
    },
    CatalogEntry {
        name: "log1p_shifted",
        basis: Basis::Shifted,
        description: "ln(1 + x) on [0, 1]",
        generator: log1p_shifted,
        anchors: &[],
    },
    CatalogEntry {
        name: "atan",
        basis: Basis::Standard,
        description: "arctan(x) on [-1, 1]",
        generator: atan,
        anchors: &[],
    },
    CatalogEntry {
        name: "atan_over_x",
        basis: Basis::Standard,
        description: "arctan(x)/x on [-1, 1]",
        generator: atan_over_x,
        anchors: &[("g_0 = 2 ln(1 + sqrt2)", ATAN_OVER_X_G0)],
    },
    CatalogEntry {
        name: "asin",
        basis: Basis::Standard,
        description: "arcsin(x) on [-1, 1]",
        generator: asin,
        anchors: &[],
    },
    CatalogEntry {
        name: "asin_over_x",
        basis: Basis::Standard,
        description: "arcsin(x)/x on [-1, 1]",
        generator: asin_over_x,
        anchors: &[("h_0 = 8 beta(2)/pi", 8.0 * special::CATALAN / PI)],
    },
    CatalogEntry {
        name: "asin_sqrt2_over_x",
        basis: Basis::Standard,
        description: "arcsin(x/sqrt2)/x on [-1, 1]",
        generator: asin_sqrt2_over_x,
        anchors: &[],
    },
    CatalogEntry {
        name: "digamma_plus2",
        basis: Basis::Standard,
        description: "psi(x + 2) on [-1, 1]",
        generator: digamma_plus2,
        anchors: &[("gamma", special::EULER_GAMMA)],
    },
];

/// `2 ln(1 + sqrt2)`, the zeroth coefficient of `arctan(x)/x`.
pub const ATAN_OVER_X_G0: f64 = 1.762_747_174_039_086;

/// All registered entries.
pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

/// Coefficients `f_0..f_{n_max}` of the named expansion.
pub fn catalog(name: &str, n_max: usize) -> Result<ChebSeries> {
    Ok(lookup(name)?.generate(n_max))
}

fn even_sign(n: usize) -> f64 {
    if (n / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `f_n = 4 (-1)^{n/2} sum_{s >= n/2} J_{2s+1}(pi/2)`, `n` even.
fn sinc_pi2(n_max: usize) -> Vec<f64> {
    let j = special::bessel_j_sequence(n_max + 41, PI / 2.0).expect("argument in range");
    let mut out = vec![0.0; n_max + 1];
    // tail sums of odd orders, accumulated from the top
    let mut tail = 0.0;
    let mut s = (j.len() - 2) / 2;
    loop {
        tail += j[2 * s + 1];
        if 2 * s <= n_max {
            out[2 * s] = 4.0 * even_sign(2 * s) * tail;
        }
        if s == 0 {
            break;
        }
        s -= 1;
    }
    out
}

/// `g_n = 2 (-1)^{n/2} J_n(pi/2)`, `n` even.
fn cos_pi2(n_max: usize) -> Vec<f64> {
    let j = special::bessel_j_sequence(n_max, PI / 2.0).expect("argument in range");
    (0..=n_max)
        .map(|n| if n % 2 == 0 { 2.0 * even_sign(n) * j[n] } else { 0.0 })
        .collect()
}

/// Coefficients of `cos(pi x/2)/(1 - x^2)`.
///
/// From `g = (1 - x^2) f` the coefficients satisfy
/// `f_n = 2 f_{n-2} - f_{n-4} - 4 g_{n-2}`; summing that relation from the top
/// gives the stable closed form `f_n = -2 sum_{m >= n+2} (m - n) g_m`.
fn cos_pi2_lifted(n_max: usize) -> Vec<f64> {
    let top = n_max + 40;
    let g = cos_pi2(top);
    let mut out = vec![0.0; n_max + 1];
    for n in (0..=n_max).step_by(2) {
        let acc: f64 = ((n + 2)..top + 1).step_by(2).rev().map(|m| (m - n) as f64 * g[m]).sum();
        out[n] = -2.0 * acc;
    }
    out
}

/// `cos(pi x/2)/(1 - x^2)` by the upward recurrence from `f_0 = pi J_1(pi/2)`,
/// `f_2 = f_0 - 2 g_0`; accurate only for the leading coefficients.
pub fn cos_pi2_lifted_upward(n_max: usize) -> Vec<f64> {
    let g = cos_pi2(n_max.max(2));
    let mut f = vec![0.0; n_max.max(2) + 1];
    f[0] = PI * special::bessel_j(1, PI / 2.0).expect("argument in range");
    f[2] = f[0] - 2.0 * g[0];
    for n in (4..=n_max).step_by(2) {
        f[n] = 2.0 * f[n - 2] - f[n - 4] - 4.0 * g[n - 2];
    }
    f.truncate(n_max + 1);
    f
}

/// `f_n = 2 I_n(1)`.
fn exp_std(n_max: usize) -> Vec<f64> {
    special::bessel_i_sequence(n_max, 1.0)
        .expect("argument in range")
        .into_iter()
        .map(|v| 2.0 * v)
        .collect()
}

/// `f_n = 2 sqrt(e) I_n(1/2)` in the shifted basis.
fn exp_shifted(n_max: usize) -> Vec<f64> {
    let scale = 2.0 * 0.5f64.exp();
    special::bessel_i_sequence(n_max, 0.5)
        .expect("argument in range")
        .into_iter()
        .map(|v| scale * v)
        .collect()
}

/// `f_n = 2 (-1)^{n/2} J_{n/2}(pi/4)^2`, `n` even.
fn j0_pi2(n_max: usize) -> Vec<f64> {
    let j = special::bessel_j_sequence(n_max / 2, PI / 4.0).expect("argument in range");
    (0..=n_max)
        .map(|n| {
            if n % 2 == 0 {
                let v = j[n / 2];
                2.0 * even_sign(n) * v * v
            } else {
                0.0
            }
        })
        .collect()
}

/// `f_0 = 2 ln((3 + 2 sqrt2)/4)`, `f_n = 2 (-1)^{n+1} / (n (3 + 2 sqrt2)^n)`.
fn log1p_shifted(n_max: usize) -> Vec<f64> {
    let w = 3.0 + 2.0 * SQRT_2;
    let mut out = vec![2.0 * (w / 4.0).ln()];
    let mut pow = 1.0;
    for n in 1..=n_max {
        pow /= w;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        out.push(2.0 * sign * pow / n as f64);
    }
    out
}

/// `log1p_shifted` rebuilt by integrating the shifted expansion of
/// `1/(1 + x)` and fixing the constant from `ln 2` at `x = 1`.
pub fn log1p_shifted_by_integration(n_max: usize) -> Result<ChebSeries> {
    // 1/(1 + x) = -1/(-1 - x)
    let d = partial_fractions::PFDecomposition::from_terms(vec![partial_fractions::PartialFractionTerm {
        z: num_complex::Complex64::new(-1.0, 0.0),
        s: 1,
        weight: num_complex::Complex64::new(-1.0, 0.0),
    }]);
    let inv = partial_fractions::expand_inverse_shifted(&d, n_max + 1)?;
    let mut f = inv.integrate().into_coeffs();
    f.truncate(n_max + 1);
    let tail: f64 = f[1..].iter().sum();
    f[0] = 2.0 * (2f64.ln() - tail);
    Ok(ChebSeries::shifted(f))
}

/// `2 (-1)^{floor(j/2)} / (j (1 + sqrt2)^j)`, `j` odd.
fn atan(n_max: usize) -> Vec<f64> {
    let w = 1.0 + SQRT_2;
    let mut out = vec![0.0; n_max + 1];
    let mut pow = 1.0;
    for j in 1..=n_max {
        pow /= w;
        if j % 2 == 1 {
            let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
            out[j] = 2.0 * sign * pow / j as f64;
        }
    }
    out
}

/// `arctan(x)/x` by running `h_{n-2} = 2 f_{n-1} - h_n` down from far
/// beyond `n_max`, which is stable; the anchored upward form reproduces
/// `h_0 = 2 ln(1 + sqrt2)`.
fn atan_over_x(n_max: usize) -> Vec<f64> {
    let top = n_max + 60;
    let f = atan(top + 1);
    downward_divide_by_x(&f, top, n_max)
}

/// `h` with `f = x h` from `h_{n-2} = 2 f_{n-1} - h_n`, starting at zero
/// above `top` (of the parity of `top`); returns `h_0..h_{n_max}`.
fn downward_divide_by_x(f: &[f64], top: usize, n_max: usize) -> Vec<f64> {
    let mut h = vec![0.0; top + 3];
    for n in (2..=top + 2).rev() {
        h[n - 2] = 2.0 * f.get(n - 1).copied().unwrap_or(0.0) - h[n];
    }
    h.truncate(n_max + 1);
    h
}

/// `g_n = 4/(pi n^2)`, `n` odd.
fn asin(n_max: usize) -> Vec<f64> {
    (0..=n_max)
        .map(|n| if n % 2 == 1 { 4.0 / (PI * (n * n) as f64) } else { 0.0 })
        .collect()
}

/// `h_0 = 8 beta(2)/pi`, `h_{n+2} = -h_n + 8/(pi (n+1)^2)`.
fn asin_over_x(n_max: usize) -> Vec<f64> {
    let mut h = vec![0.0; n_max + 1];
    h[0] = 8.0 * special::CATALAN / PI;
    for n in (0..n_max.saturating_sub(1)).step_by(2) {
        h[n + 2] = -h[n] + 8.0 / (PI * ((n + 1) * (n + 1)) as f64);
    }
    h
}

/// `arcsin(x/sqrt2)/x` from its Taylor series
/// `(1/sqrt2) sum_l c_l/((2l + 1) 2^l) x^{2l}`, `c_l = binom(2l, l)/4^l`,
/// whose terms are all positive.
fn asin_sqrt2_over_x(n_max: usize) -> Vec<f64> {
    special::even_power_series_to_cheb(n_max, |l, c| {
        FRAC_1_SQRT_2 * c / ((2 * l + 1) as f64 * 2f64.powi(l as i32))
    })
}

/// Odd coefficients `k_n = (G_{n-1} - G_{n+1})/(n pi)` of `arcsin(x/sqrt2)`.
pub fn asin_sqrt2_k(n_max: usize) -> Vec<f64> {
    let g = special::elliptic_g(n_max + 1);
    (0..=n_max)
        .map(|n| {
            if n % 2 == 1 {
                (g[n - 1] - g[n + 1]) / (n as f64 * PI)
            } else {
                0.0
            }
        })
        .collect()
}

/// `arcsin(x/sqrt2)/x` from the elliptic-integral values `G_s`, running
/// `f_{n-2} = 2 k_{n-1} - f_n` downward.
pub fn asin_sqrt2_over_x_via_g(n_max: usize) -> Vec<f64> {
    let top = n_max + 60;
    let k = asin_sqrt2_k(top + 1);
    downward_divide_by_x(&k, top, n_max)
}

/// One row of the exact decomposition of the `arcsin(x/sqrt2)/x` coefficients:
/// `k_{n-1} = sqrt2/pi (alpha_1 K + alpha_2 E)` and
/// `f_n = sqrt2/pi (alpha_3 K + alpha_4 E) + (-1)^{n/2} f_0`, with `K`, `E` at
/// modulus `1/sqrt2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaRow {
    pub n: usize,
    pub alpha: [BigRational; 4],
}

impl AlphaRow {
    pub fn k_prev(&self) -> f64 {
        let (k, e) = special::elliptic_ke_half();
        SQRT_2 / PI * (to_f64(&self.alpha[0]) * k + to_f64(&self.alpha[1]) * e)
    }

    pub fn f(&self, f0: f64) -> f64 {
        let (k, e) = special::elliptic_ke_half();
        SQRT_2 / PI * (to_f64(&self.alpha[2]) * k + to_f64(&self.alpha[3]) * e) + even_sign(self.n) * f0
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Rows `n = 2, 4, ..., n_max` of the exact decomposition.
pub fn asin_sqrt2_alpha(n_max: usize) -> Vec<AlphaRow> {
    let forms = special::exact_g_forms(n_max.max(2));
    let mut rows = Vec::new();
    // f_n - (-1)^{n/2} f_0 in K, E units; zero at n = 0
    let mut prev = (BigRational::zero(), BigRational::zero());
    for n in (2..=n_max).step_by(2) {
        let denom = BigRational::from_integer(BigInt::from(n as i64 - 1));
        let a1 = (&forms[n - 2].0 - &forms[n].0) / &denom;
        let a2 = (&forms[n - 2].1 - &forms[n].1) / &denom;
        let two = BigRational::from_integer(BigInt::from(2));
        let a3 = &two * &a1 - &prev.0;
        let a4 = &two * &a2 - &prev.1;
        prev = (a3.clone(), a4.clone());
        rows.push(AlphaRow {
            n,
            alpha: [a1, a2, a3, a4],
        });
    }
    rows
}

/// Pole pair `m` of `tanh(pi x/2)/x = (4/pi) sum_m i/(2(2m-1)) [1/(i(2m-1) - x) - 1/(-i(2m-1) - x)]`.
pub fn tanh_pi2_over_x_poles(m: usize) -> Vec<partial_fractions::PartialFractionTerm> {
    let odd = (2 * m - 1) as f64;
    let w = num_complex::Complex64::new(0.0, 2.0 / (PI * odd));
    vec![
        partial_fractions::PartialFractionTerm {
            z: num_complex::Complex64::new(0.0, odd),
            s: 1,
            weight: w,
        },
        partial_fractions::PartialFractionTerm {
            z: num_complex::Complex64::new(0.0, -odd),
            s: 1,
            weight: -w,
        },
    ]
}

/// `psi(x + 2)`: stored `a_0 = 2 (1 - gamma - K_1)`,
/// `a_n = -(-1)^n (K_{n-1} + K_{n+1})`.
fn digamma_plus2(n_max: usize) -> Vec<f64> {
    let k = special::digamma_k(n_max + 1);
    let mut out = vec![2.0 * (1.0 - special::EULER_GAMMA - k[1])];
    for n in 1..=n_max {
        let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
        out.push(sign * (k[n - 1] + k[n + 1]));
    }
    out
}
