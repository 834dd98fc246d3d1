//! Chebyshev series in the standard basis `T_n` on `[-1, 1]` or the shifted
//! basis `T*_n(x) = T_n(2x - 1)` on `[0, 1]`.
//!
//! Coefficients follow the primed-sum convention: the stored `a_0` is the
//! unhalved value and evaluation applies the factor `1/2`, so that
//!
//! ```text
//! f(x) = a_0/2 + a_1 T_1(x) + a_2 T_2(x) + ...
//! ```
//!
//! A denominator polynomial written with a plain sum `b_0 T_0 + b_1 T_1 + ...`
//! is therefore stored as `[2 b_0, b_1, b_2, ...]`; see
//! [`ChebSeries::from_plain`] and [`ChebSeries::plain`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Expansion basis of a [`ChebSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// `T_n(x)` on `[-1, 1]`.
    #[serde(rename = "T")]
    Standard,
    /// `T*_n(x) = T_n(2x - 1)` on `[0, 1]`.
    #[serde(rename = "Tstar")]
    Shifted,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Standard => "T",
            Basis::Shifted => "Tstar",
        }
    }

    /// Closed interval on which the basis is orthogonal.
    pub fn domain(self) -> (f64, f64) {
        match self {
            Basis::Standard => (-1.0, 1.0),
            Basis::Shifted => (0.0, 1.0),
        }
    }

    /// Maps a point of the domain onto `[-1, 1]`.
    #[inline]
    pub fn to_standard(self, x: f64) -> f64 {
        match self {
            Basis::Standard => x,
            Basis::Shifted => 2.0 * x - 1.0,
        }
    }

    /// `d/dx` of the map onto `[-1, 1]`.
    #[inline]
    fn scale(self) -> f64 {
        match self {
            Basis::Standard => 1.0,
            Basis::Shifted => 2.0,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Chebyshev series with stored-unhalved zeroth coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChebSeries {
    basis: Basis,
    coeffs: Vec<f64>,
}

impl ChebSeries {
    /// Builds a series from primed-sum coefficients. An empty slice becomes
    /// the zero series `[0]`.
    pub fn new(basis: Basis, coeffs: impl Into<Vec<f64>>) -> Self {
        let mut coeffs = coeffs.into();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { basis, coeffs }
    }

    pub fn standard(coeffs: impl Into<Vec<f64>>) -> Self {
        Self::new(Basis::Standard, coeffs)
    }

    pub fn shifted(coeffs: impl Into<Vec<f64>>) -> Self {
        Self::new(Basis::Shifted, coeffs)
    }

    /// Builds a series from plain-sum coefficients `b_0 T_0 + b_1 T_1 + ...`.
    pub fn from_plain(basis: Basis, plain: &[f64]) -> Self {
        let mut coeffs = plain.to_vec();
        if let Some(c0) = coeffs.first_mut() {
            *c0 *= 2.0;
        }
        Self::new(basis, coeffs)
    }

    /// The constant one, `{2}`.
    pub fn one(basis: Basis) -> Self {
        Self::new(basis, vec![2.0])
    }

    pub fn zero(basis: Basis) -> Self {
        Self::new(basis, vec![0.0])
    }

    /// Unit vector `T_n`.
    pub fn unit(basis: Basis, n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = if n == 0 { 2.0 } else { 1.0 };
        Self::new(basis, coeffs)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the last stored coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Stored coefficient `n`, zero beyond the stored range.
    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    /// Plain-sum coefficient: `a_0/2` for `n = 0`, `a_n` otherwise.
    #[inline]
    pub fn plain(&self, n: usize) -> f64 {
        if n == 0 {
            self.get(0) / 2.0
        } else {
            self.get(n)
        }
    }

    /// All plain-sum coefficients.
    pub fn plain_coeffs(&self) -> Vec<f64> {
        (0..self.len()).map(|n| self.plain(n)).collect()
    }

    /// Copy truncated or zero-padded to indices `0..=n`.
    pub fn resized(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, 0.0);
        Self::new(self.basis, coeffs)
    }

    /// Drops trailing coefficients with magnitude below `1e-300`, keeping at
    /// least one.
    pub fn normalize(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.abs() < 1e-300) {
            coeffs.pop();
        }
        Self::new(self.basis, coeffs)
    }

    pub fn check_same_basis(&self, other: &ChebSeries) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis.name(),
                right: other.basis.name(),
            });
        }
        Ok(())
    }

    /// Evaluates the series by Clenshaw's backward recurrence.
    ///
    /// `x` must lie in the basis domain; points outside are not rejected and
    /// simply evaluate the polynomial there.
    pub fn eval(&self, x: f64) -> f64 {
        let t = self.basis.to_standard(x);
        let two_t = 2.0 * t;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs[1..].iter().rev() {
            let b0 = c + two_t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        t * b1 - b2 + 0.5 * self.coeffs[0]
    }

    /// `alpha * self + beta * other`.
    pub fn linear_combination(&self, alpha: f64, other: &ChebSeries, beta: f64) -> Result<Self> {
        self.check_same_basis(other)?;
        let len = self.len().max(other.len());
        let coeffs = (0..len)
            .map(|n| alpha * self.get(n) + beta * other.get(n))
            .collect::<Vec<_>>();
        Ok(Self::new(self.basis, coeffs))
    }

    pub fn add(&self, other: &ChebSeries) -> Result<Self> {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &ChebSeries) -> Result<Self> {
        self.linear_combination(1.0, other, -1.0)
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self::new(self.basis, self.coeffs.iter().map(|c| alpha * c).collect::<Vec<_>>())
    }

    /// Product series via `T_n T_m = (T_{|n-m|} + T_{n+m}) / 2`.
    pub fn product(&self, other: &ChebSeries) -> Result<Self> {
        self.check_same_basis(other)?;
        let p = self.plain_coeffs();
        let q = other.plain_coeffs();
        let mut out = vec![0.0; p.len() + q.len() - 1];
        for (n, &pn) in p.iter().enumerate() {
            if pn == 0.0 {
                continue;
            }
            for (m, &qm) in q.iter().enumerate() {
                let half = 0.5 * pn * qm;
                out[n + m] += half;
                out[n.abs_diff(m)] += half;
            }
        }
        Ok(Self::from_plain(self.basis, &out))
    }

    /// Antiderivative with the zeroth coefficient set to zero.
    ///
    /// The shifted basis carries the extra factor `1/2` from `dx = du/2`.
    pub fn integrate(&self) -> Self {
        let a = &self.coeffs;
        let n_max = a.len();
        let mut out = vec![0.0; n_max + 1];
        let s = 1.0 / self.basis.scale();
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            let lower = a[n - 1];
            let upper = a.get(n + 1).copied().unwrap_or(0.0);
            *slot = s * (lower - upper) / (2.0 * n as f64);
        }
        Self::new(self.basis, out)
    }

    /// Derivative series; the constant series maps to `[0]`.
    pub fn differentiate(&self) -> Self {
        let a = &self.coeffs;
        let n = a.len();
        if n == 1 {
            return Self::zero(self.basis);
        }
        let mut out = vec![0.0; n - 1];
        // c'_{j-1} = c'_{j+1} + 2 j c_j, descending
        for j in (1..n).rev() {
            let above = out.get(j + 1).copied().unwrap_or(0.0);
            out[j - 1] = above + 2.0 * j as f64 * a[j];
        }
        let s = self.basis.scale();
        if s != 1.0 {
            out.iter_mut().for_each(|c| *c *= s);
        }
        Self::new(self.basis, out)
    }

    /// Power-basis coefficients in the domain variable `x` (for a shifted
    /// series, `x` in `[0, 1]`).
    pub fn to_monomial(&self) -> MonomialPoly {
        let b = self.plain_coeffs();
        let k = b.len() - 1;
        let mut d = vec![0.0; k + 1];
        d[0] += b[0];
        for (l, dl) in d.iter_mut().enumerate() {
            let pow = if l == 0 { 0.5 } else { 2f64.powi(l as i32 - 1) };
            let mut acc = 0.0;
            let mut j = if l == 0 { 2 } else { l };
            while j <= k {
                let m = (j - l) / 2;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                // ((j + l)/2 - 1)! / (m! l!)
                let top = (j + l) / 2 - 1;
                acc += sign * j as f64 * factorial_ratio(top, m, l) * b[j];
                j += 2;
            }
            *dl += pow * acc;
        }
        let p = MonomialPoly::new(d);
        match self.basis {
            Basis::Standard => p,
            // t = 2x - 1
            Basis::Shifted => p.compose_affine(2.0, -1.0),
        }
    }

    /// Power-basis polynomial in the domain variable, expressed in the
    /// Chebyshev basis.
    pub fn from_monomial(p: &MonomialPoly, basis: Basis) -> Self {
        let p = match basis {
            Basis::Standard => p.clone(),
            // x = (t + 1)/2
            Basis::Shifted => p.compose_affine(0.5, 0.5),
        };
        let d = p.coeffs();
        let mut out = vec![0.0; d.len()];
        for (n, &dn) in d.iter().enumerate() {
            if dn == 0.0 {
                continue;
            }
            // x^n = 2^{1-n} sum' binom(n, (n-j)/2) T_j, j of the parity of n
            let scale = 2f64.powi(1 - n as i32);
            let mut j = n % 2;
            while j <= n {
                out[j] += dn * scale * binomial(n, (n - j) / 2);
                j += 2;
            }
        }
        Self::new(basis, out)
    }

    /// Coefficients of `f(x)/x` from those of `f`, anchored at `h_0`.
    ///
    /// Runs `h_1 = f_0`, `h_n = 2 f_{n-1} - h_{n-2}` upward; the result has one
    /// more coefficient than `self`.
    pub fn divide_by_x(&self, anchor_h0: f64) -> Self {
        let f = &self.coeffs;
        let mut h = Vec::with_capacity(f.len() + 1);
        h.push(anchor_h0);
        h.push(f[0]);
        for n in 2..=f.len() {
            let next = 2.0 * f[n - 1] - h[n - 2];
            h.push(next);
        }
        Self::new(self.basis, h)
    }

    /// `sum_{n >= from_n} |a_n|` over the stored coefficients.
    pub fn tail_bound(&self, from_n: usize) -> f64 {
        self.coeffs.iter().skip(from_n).map(|c| c.abs()).sum()
    }

    /// Primed absolute sum `|a_0|/2 + sum_{n>=1} |a_n|`, an upper bound on
    /// `max |f|` over the domain.
    pub fn primed_abs_sum(&self) -> f64 {
        0.5 * self.coeffs[0].abs() + self.tail_bound(1)
    }

    /// Whether every odd-indexed (`odd = true`) or even-indexed coefficient is
    /// exactly zero.
    pub fn has_zero_parity(&self, odd: bool) -> bool {
        let start = usize::from(odd);
        self.coeffs.iter().skip(start).step_by(2).all(|&c| c == 0.0)
    }
}

/// Polynomial in the power basis, `d_0 + d_1 x + ... + d_k x^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialPoly {
    coeffs: Vec<f64>,
}

impl MonomialPoly {
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut coeffs = coeffs.into();
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Stored degree (trailing zeros included).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Drops zero leading coefficients so that `d_k != 0`.
    pub fn normalize(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `q(y) = p(scale y + shift)`.
    pub fn compose_affine(&self, scale: f64, shift: f64) -> Self {
        let mut out = vec![0.0; self.coeffs.len()];
        // Horner in polynomial arithmetic: out = out * (scale y + shift) + c
        for (deg, &c) in self.coeffs.iter().rev().enumerate() {
            for i in (0..=deg).rev() {
                let lower = if i > 0 { out[i - 1] } else { 0.0 };
                out[i] = out[i] * shift + lower * scale;
            }
            out[0] += c;
        }
        Self::new(out)
    }

    pub fn to_cheb(&self, basis: Basis) -> ChebSeries {
        ChebSeries::from_monomial(self, basis)
    }
}

/// `binom(n, k)` in floating point.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `top! / (m! l!)` for `top = m + l - 1`, computed as a running product.
fn factorial_ratio(top: usize, m: usize, l: usize) -> f64 {
    // top!/m! = (m+1)(m+2)...(top), then divide by l!
    let mut r = 1.0;
    let mut num = m + 1;
    let mut den = 1;
    while num <= top || den <= l {
        if num <= top {
            r *= num as f64;
            num += 1;
        }
        if den <= l {
            r /= den as f64;
            den += 1;
        }
    }
    if top < m {
        // l = 0 with top = m - 1: (m-1)!/m! = 1/m
        r = 1.0 / m as f64;
    }
    r
}
