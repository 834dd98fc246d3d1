//! Chebyshev coefficients of `1/(z - x)^s` and of inverse polynomials
//! assembled from their partial fractions over the complex roots.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::roots;
use crate::series::{binomial, Basis, ChebSeries, MonomialPoly};

/// Roots closer than this to the expansion interval are rejected.
pub const DOMAIN_TOLERANCE: f64 = 1e-8;
/// Relative distance below which roots are merged into one multiple root.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;
/// Imaginary residue (relative to the coefficient scale) tolerated when
/// recombining conjugate contributions.
pub const IMAG_TOLERANCE: f64 = 1e-12;

/// `w` and `(z^2 - 1)^{1/2}` on the sheet with `|w| > 1`.
fn branch(z: Complex64) -> Result<(Complex64, Complex64)> {
    if !z.is_finite() {
        return Err(Error::OnBranchCut { z });
    }
    let mut root = (z * z - 1.0).sqrt();
    let mut w = z + root;
    if w.norm() < 1.0 {
        root = -root;
        w = z + root;
    }
    if w.norm() <= 1.0 + 1e-15 {
        return Err(Error::OnBranchCut { z });
    }
    Ok((w, root))
}

/// `w = z + (z^2 - 1)^{1/2}` with the square-root branch chosen so `|w| > 1`.
pub fn principal_w(z: Complex64) -> Result<Complex64> {
    branch(z).map(|(w, _)| w)
}

/// The branch of `(z^2 - 1)^{1/2}` consistent with [`principal_w`].
pub fn principal_root(z: Complex64) -> Result<Complex64> {
    branch(z).map(|(_, r)| r)
}

/// `a_{n,1}(z) = 2 / ((z^2 - 1)^{1/2} w^n)`, the `T_n` coefficient of
/// `1/(z - x)`.
pub fn a_n1(z: Complex64, n: usize) -> Result<Complex64> {
    let (w, root) = branch(z)?;
    Ok(2.0 / (root * w.powu(n as u32)))
}

/// `a_{n,s}(z)` for `0 <= n <= n_max`, `1 <= s <= s_max`.
#[derive(Debug, Clone)]
pub struct AnsTable {
    z: Complex64,
    n_max: usize,
    s_max: usize,
    // row-major in s: data[(s - 1) * (n_max + 1) + n]
    data: Vec<Complex64>,
}

impl AnsTable {
    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    /// `a_{n,s}`; `s = 0` is the constant one (`a_{0,0} = 2`).
    pub fn get(&self, n: usize, s: usize) -> Complex64 {
        if s == 0 {
            return if n == 0 {
                Complex64::new(2.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        assert!(n <= self.n_max && s <= self.s_max, "a_{{{n},{s}}} outside table");
        self.data[(s - 1) * (self.n_max + 1) + n]
    }

    /// Row `s` as a slice over `n`.
    pub fn row(&self, s: usize) -> &[Complex64] {
        let w = self.n_max + 1;
        &self.data[(s - 1) * w..s * w]
    }
}

/// Pochhammer symbol `(1/2)_m`.
fn half_pochhammer(m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (0.5 + i as f64))
}

/// `a_{0,s+1}(z)` from the closed Pochhammer sum (the `s`-th `z`-derivative of
/// `2 (z^2 - 1)^{-1/2}`).
fn a0_closed(z: Complex64, root: Complex64, s: usize) -> Complex64 {
    let zz1 = z * z - 1.0;
    let two_z = 2.0 * z;
    let mut factorial = vec![1.0; s + 1];
    for i in 1..=s {
        factorial[i] = factorial[i - 1] * i as f64;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..=s / 2 {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign / (factorial[l] * factorial[s - 2 * l]) * half_pochhammer(s - l);
        // (z^2-1)^{1/2 + s - l} on the branch of `root`
        let denom = root * zz1.powu((s - l) as u32);
        acc += c * two_z.powu((s - 2 * l) as u32) / denom;
    }
    2.0 * acc
}

/// Table of `a_{n,s}(z)`.
///
/// Row `s = 1` comes from the closed form, `a_{0,s}` from the Pochhammer sum,
/// `a_{1,s} = -a_{0,s-1} + z a_{0,s}`, and the rest from
/// `a_{n+1,s} = a_{n-1,s} - 2n/(s-1) a_{n,s-1}`.
pub fn a_ns_table(z: Complex64, n_max: usize, s_max: usize) -> Result<AnsTable> {
    if s_max == 0 {
        return Err(Error::Contract("a_ns_table needs s_max >= 1".into()));
    }
    let (w, root) = branch(z)?;
    let width = n_max + 1;
    let mut data = vec![Complex64::new(0.0, 0.0); width * s_max];

    let inv_w = w.inv();
    let mut term = 2.0 / root;
    for slot in data[..width].iter_mut() {
        *slot = term;
        term *= inv_w;
    }

    for s in 2..=s_max {
        let (prev, cur) = data.split_at_mut((s - 1) * width);
        let prev = &prev[(s - 2) * width..];
        let cur = &mut cur[..width];
        cur[0] = a0_closed(z, root, s - 1);
        if n_max >= 1 {
            let a0_prev = if s == 2 { 2.0 / root } else { prev[0] };
            cur[1] = -a0_prev + z * cur[0];
        }
        let ratio = 2.0 / (s - 1) as f64;
        for n in 1..n_max {
            cur[n + 1] = cur[n - 1] - ratio * n as f64 * prev[n];
        }
    }

    Ok(AnsTable { z, n_max, s_max, data })
}

/// One summand `weight / (z - x)^s` of a partial-fraction decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialFractionTerm {
    pub z: Complex64,
    pub s: usize,
    pub weight: Complex64,
}

impl PartialFractionTerm {
    pub fn eval(&self, x: f64) -> Complex64 {
        self.weight / (self.z - x).powu(self.s as u32)
    }
}

/// `1 / sum d_j x^j` as a sum of [`PartialFractionTerm`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct PFDecomposition {
    pub terms: Vec<PartialFractionTerm>,
    /// `1/(d_k (-1)^k)`, the factor relating `1/p` to `1/prod (z_i - x)^{m_i}`.
    pub scale: Complex64,
}

impl PFDecomposition {
    /// Decomposition assembled from explicitly known terms.
    pub fn from_terms(terms: Vec<PartialFractionTerm>) -> Self {
        Self {
            terms,
            scale: Complex64::new(1.0, 0.0),
        }
    }

    /// Sum of the terms at `x`.
    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Distinct roots with their highest exponent.
    fn roots(&self) -> Vec<(Complex64, usize)> {
        let mut out: Vec<(Complex64, usize)> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|(z, _)| *z == t.z) {
                Some((_, s)) => *s = (*s).max(t.s),
                None => out.push((t.z, t.s)),
            }
        }
        out
    }
}

/// Distance of `z` from the real interval `[lo, hi]`.
fn distance_to_interval(z: Complex64, lo: f64, hi: f64) -> f64 {
    let dx = if z.re < lo {
        lo - z.re
    } else if z.re > hi {
        z.re - hi
    } else {
        0.0
    };
    dx.hypot(z.im)
}

/// Partial fractions of `1/p(x)` for expansion on `[-1, 1]`.
pub fn decompose(p: &MonomialPoly) -> Result<PFDecomposition> {
    decompose_for(p, Basis::Standard)
}

/// Partial fractions of `1/p(x)`, rejecting roots on the domain of `basis`.
pub fn decompose_for(p: &MonomialPoly, basis: Basis) -> Result<PFDecomposition> {
    let p = p.normalize();
    let d = p.coeffs();
    let k = p.degree();
    if k == 0 {
        return Err(Error::Contract(
            "partial fractions need a denominator of degree >= 1".into(),
        ));
    }
    let raw = roots::polynomial_roots(d)?;
    let (lo, hi) = basis.domain();
    if let Some(&z) = raw
        .iter()
        .find(|z| distance_to_interval(**z, lo, hi) <= DOMAIN_TOLERANCE)
    {
        return Err(Error::RootInDomain {
            root: z,
            tolerance: DOMAIN_TOLERANCE,
        });
    }

    let clusters: Vec<(Complex64, usize)> = cluster_roots(&raw, CLUSTER_TOLERANCE)
        .into_iter()
        .map(|(z, m)| (polish_multiple_root(d, snap_real(z), m), m))
        .collect();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let scale = Complex64::new(1.0 / (d[k] * sign), 0.0);

    let mut terms = Vec::with_capacity(k);
    for (i, &(zi, mi)) in clusters.iter().enumerate() {
        // Taylor coefficients in t = z_i - x of scale * prod_{j != i} (z_j - x)^{-m_j}
        let mut series = vec![Complex64::new(0.0, 0.0); mi];
        series[0] = scale;
        for (j, &(zj, mj)) in clusters.iter().enumerate() {
            if j == i {
                continue;
            }
            let delta = zj - zi;
            let factor = inverse_power_series(delta, mj, mi);
            series = truncated_product(&series, &factor);
        }
        for (r, &c) in series.iter().enumerate() {
            terms.push(PartialFractionTerm {
                z: zi,
                s: mi - r,
                weight: c,
            });
        }
    }
    Ok(PFDecomposition { terms, scale })
}

/// Moves a root of the real polynomial onto the real axis when its
/// imaginary part is at the level of the clustering noise.
fn snap_real(z: Complex64) -> Complex64 {
    if z.im.abs() <= CLUSTER_TOLERANCE * z.norm().max(1.0) {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Newton steps on `p^{(m-1)}`, of which an `m`-fold root of `p` is simple.
fn polish_multiple_root(d: &[f64], z: Complex64, m: usize) -> Complex64 {
    if m < 2 {
        return z;
    }
    // coefficients of the (m-1)th derivative
    let mut q: Vec<f64> = d.to_vec();
    for _ in 1..m {
        q = q.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect();
    }
    let mut z = z;
    for _ in 0..8 {
        let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &c in q.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

/// Groups roots closer than `tol * max(1, |z|)`; members are averaged.
fn cluster_roots(raw: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let n = raw.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = raw[i].norm().max(raw[j].norm()).max(1.0);
            if (raw[i] - raw[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += raw[i];
                g.2 += 1;
            }
            None => groups.push((r, raw[i], 1)),
        }
    }
    groups.into_iter().map(|(_, sum, m)| (sum / m as f64, m)).collect()
}

/// First `len` Taylor coefficients of `(delta + t)^{-m}` in `t`.
fn inverse_power_series(delta: Complex64, m: usize, len: usize) -> Vec<Complex64> {
    let base = delta.powi(-(m as i32));
    let inv = delta.inv();
    let mut out = Vec::with_capacity(len);
    let mut coef = base;
    for r in 0..len {
        out.push(coef);
        // binom(-m, r+1)/binom(-m, r) = -(m + r)/(r + 1)
        coef *= -((m + r) as f64) / (r + 1) as f64 * inv;
    }
    out
}

fn truncated_product(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let len = a.len();
    (0..len).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect()
}

/// Combines complex per-index contributions into a real series after
/// checking that the imaginary parts cancel.
fn recombine(basis: Basis, sums: Vec<Complex64>, magnitudes: Vec<f64>) -> Result<ChebSeries> {
    let scale = magnitudes.iter().fold(0.0f64, |m, &v| m.max(v));
    let threshold = IMAG_TOLERANCE * scale;
    for (n, s) in sums.iter().enumerate() {
        if s.im.abs() > threshold {
            return Err(Error::InconsistentDecomposition {
                index: n,
                imag: s.im,
                threshold,
            });
        }
    }
    Ok(ChebSeries::new(
        basis,
        sums.into_iter().map(|s| s.re).collect::<Vec<_>>(),
    ))
}

fn expand_with(
    d: &PFDecomposition,
    n_max: usize,
    basis: Basis,
    map: impl Fn(Complex64) -> Complex64,
    factor: impl Fn(usize) -> f64,
) -> Result<ChebSeries> {
    let mut sums = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut magnitudes = vec![0.0; n_max + 1];
    for (z, s_max) in d.roots() {
        let table = a_ns_table(map(z), n_max, s_max)?;
        for t in d.terms.iter().filter(|t| t.z == z) {
            let w = t.weight * factor(t.s);
            for (n, a) in table.row(t.s).iter().enumerate() {
                let c = w * a;
                sums[n] += c;
                magnitudes[n] += c.norm();
            }
        }
    }
    recombine(basis, sums, magnitudes)
}

/// Chebyshev coefficients of an infinite sum of partial fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSeriesSum {
    /// Partial sum over `m <= m_max` plus the estimated tail.
    pub series: ChebSeries,
    /// Estimated contribution of `m > m_max`, per coefficient.
    pub tail: Vec<f64>,
}

/// Sums `expand_inverse` over the pole groups `poles(1), ..., poles(m_max)`.
///
/// The tail beyond `m_max` is estimated per coefficient by assuming the group
/// contributions decay like `m^-p`, with `p` read off the contributions at
/// `m_max/2` and `m_max`.
pub fn expand_pole_series(
    poles: impl Fn(usize) -> Vec<PartialFractionTerm>,
    m_max: usize,
    n_max: usize,
) -> Result<PoleSeriesSum> {
    if m_max < 2 {
        return Err(Error::Contract("pole series needs m_max >= 2".into()));
    }
    let mut sums = vec![0.0; n_max + 1];
    let mut comp = vec![0.0; n_max + 1];
    let mut at_half = vec![0.0; n_max + 1];
    let mut at_end = vec![0.0; n_max + 1];
    for m in 1..=m_max {
        let group = PFDecomposition::from_terms(poles(m));
        let c = expand_inverse(&group, n_max)?;
        for (n, &v) in c.coeffs().iter().enumerate() {
            // Kahan summation over up to millions of groups
            let y = v - comp[n];
            let t = sums[n] + y;
            comp[n] = (t - sums[n]) - y;
            sums[n] = t;
        }
        if m == m_max / 2 {
            at_half.copy_from_slice(c.coeffs());
        }
        if m == m_max {
            at_end.copy_from_slice(c.coeffs());
        }
    }
    let tail: Vec<f64> = at_half
        .iter()
        .zip(&at_end)
        .map(|(&h, &e)| {
            let ratio = h / e;
            if e == 0.0 || !(ratio > 2.0) {
                return 0.0;
            }
            let p = ratio.log2();
            e * m_max as f64 / (p - 1.0)
        })
        .collect();
    for (s, t) in sums.iter_mut().zip(&tail) {
        *s += t;
    }
    Ok(PoleSeriesSum {
        series: ChebSeries::standard(sums),
        tail,
    })
}

/// Real Chebyshev series `a_0..a_{n_max}` of the decomposed inverse
/// polynomial on `[-1, 1]`.
pub fn expand_inverse(d: &PFDecomposition, n_max: usize) -> Result<ChebSeries> {
    expand_with(d, n_max, Basis::Standard, |z| z, |_| 1.0)
}

/// Shifted-basis series on `[0, 1]`, using `1/(z - x)^s = 2^s sum' a_{n,s}(2z - 1) T*_n`.
pub fn expand_inverse_shifted(d: &PFDecomposition, n_max: usize) -> Result<ChebSeries> {
    expand_with(d, n_max, Basis::Shifted, |z| 2.0 * z - 1.0, |s| 2f64.powi(s as i32))
}

/// `(2/pi) int x^l T_s(x) / (z - x)^n dx / sqrt(1 - x^2)` for `l < n`.
pub fn moment(l: usize, n: usize, z: Complex64, s_opt: usize) -> Result<Complex64> {
    if l >= n {
        return Err(Error::Contract(format!("moment needs l < n (got l = {l}, n = {n})")));
    }
    let table = a_ns_table(z, l + s_opt, n)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut i = l % 2;
    while i <= l {
        let weight = binomial(l, (l - i) / 2) * if i == 0 { 0.5 } else { 1.0 };
        acc += weight * (table.get(i.abs_diff(s_opt), n) + table.get(i + s_opt, n));
        i += 2;
    }
    Ok(acc / 2f64.powi(l as i32))
}

/// The `s_opt = 0` moment from the binomial expansion of `x^l = (z - (z - x))^l`.
pub fn moment_binomial(l: usize, n: usize, z: Complex64) -> Result<Complex64> {
    if l >= n {
        return Err(Error::Contract(format!("moment needs l < n (got l = {l}, n = {n})")));
    }
    let table = a_ns_table(z, 0, n)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..=l {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(l, m) * z.powu((l - m) as u32) * table.get(0, n - m);
    }
    Ok(acc)
}

/// Amplification of a relative root error into the relative error of
/// `a_{n,1}`: `|z^2/(z^2 - 1) + n z/(z^2 - 1)^{1/2}|`.
pub fn sensitivity(z: Complex64, n: usize) -> Result<f64> {
    let (_, root) = branch(z)?;
    let zz1 = z * z - 1.0;
    Ok((z * z / zz1 + n as f64 * z / root).norm())
}
