//! Special functions and constants behind the built-in expansions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::binomial;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Catalan's constant `beta(2)`.
pub const CATALAN: f64 = 0.915_965_594_177_219;

/// Largest `|x|` accepted by the Bessel routines.
pub const BESSEL_MAX_ARG: f64 = 4.0;

const RESCALE: f64 = 1e250;

fn check_bessel_arg(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > BESSEL_MAX_ARG {
        return Err(Error::OutOfRange {
            what: "Bessel argument",
            value: x,
        });
    }
    Ok(())
}

/// Starting order for Miller's recurrence that leaves orders `<= n_max`
/// accurate to full precision for `|x| <= 4`.
fn miller_start(n_max: usize, x: f64) -> usize {
    let m = n_max.max(x.abs().ceil() as usize) + 40;
    m + m % 2
}

/// `J_0(x) .. J_{n_max}(x)` by Miller's backward recurrence, normalized with
/// `J_0 + 2 (J_2 + J_4 + ...) = 1`.
pub fn bessel_j_sequence(n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_bessel_arg(x)?;
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let ax = x.abs();
    let start = miller_start(n_max, ax);
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        vals[k - 1] = 2.0 * k as f64 / ax * vals[k] - vals[k + 1];
        if vals[k - 1].abs() > RESCALE {
            for v in &mut vals[k - 1..] {
                *v /= RESCALE;
            }
        }
    }
    let norm = vals[0] + 2.0 * vals.iter().skip(2).step_by(2).sum::<f64>();
    for (n, slot) in out.iter_mut().enumerate() {
        let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        *slot = sign * vals[n] / norm;
    }
    Ok(out)
}

/// Bessel function of the first kind `J_n(x)` for `|x| <= 4`.
pub fn bessel_j(n: usize, x: f64) -> Result<f64> {
    Ok(bessel_j_sequence(n, x)?[n])
}

/// `I_0(x) .. I_{n_max}(x)` by Miller's backward recurrence, normalized with
/// `I_0 + 2 (I_1 + I_2 + ...) = e^x`.
pub fn bessel_i_sequence(n_max: usize, x: f64) -> Result<Vec<f64>> {
    check_bessel_arg(x)?;
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let ax = x.abs();
    let start = miller_start(n_max, ax);
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    for k in (1..=start).rev() {
        vals[k - 1] = 2.0 * k as f64 / ax * vals[k] + vals[k + 1];
        if vals[k - 1].abs() > RESCALE {
            for v in &mut vals[k - 1..] {
                *v /= RESCALE;
            }
        }
    }
    let norm = (vals[0] + 2.0 * vals[1..].iter().sum::<f64>()) / ax.exp();
    for (n, slot) in out.iter_mut().enumerate() {
        let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
        *slot = sign * vals[n] / norm;
    }
    Ok(out)
}

/// Modified Bessel function `I_n(x)` for `|x| <= 4`.
pub fn bessel_i(n: usize, x: f64) -> Result<f64> {
    Ok(bessel_i_sequence(n, x)?[n])
}

/// Complete elliptic integrals `(K(k), E(k))` of modulus `0 <= k < 1` by the
/// arithmetic-geometric mean.
pub fn elliptic_ke(k: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::OutOfRange {
            what: "elliptic modulus",
            value: k,
        });
    }
    let mut a = 1.0;
    let mut b = (1.0 - k * k).sqrt();
    let mut c = k;
    let mut sum = 0.5 * c * c;
    let mut pow = 0.5;
    for _ in 0..64 {
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
    }
    let kk = std::f64::consts::FRAC_PI_2 / a;
    Ok((kk, kk * (1.0 - sum)))
}

/// `K(1/sqrt 2)` and `E(1/sqrt 2)`.
pub fn elliptic_ke_half() -> (f64, f64) {
    elliptic_ke(std::f64::consts::FRAC_1_SQRT_2).expect("modulus in range")
}

/// `G_s = int_{-1}^{1} T_s(x) dx / sqrt((2 - x^2)(1 - x^2))` for `s = 0..=s_max`.
///
/// `G_0 = sqrt2 K` and `G_2 = sqrt2 (3K - 4E)` come from the AGM; higher even
/// orders from the positive-term expansion `G_{2m} = (pi/2) h_{2m}` with
/// `h(x) = (2 - x^2)^{-1/2}`. Odd orders vanish. The three-term relations
/// between the `G_s` are unstable upward and serve only as checks.
pub fn elliptic_g(s_max: usize) -> Vec<f64> {
    let (k, e) = elliptic_ke_half();
    let s2 = std::f64::consts::SQRT_2;
    let mut g = vec![0.0; s_max + 1];
    g[0] = s2 * k;
    if s_max >= 2 {
        g[2] = s2 * (3.0 * k - 4.0 * e);
    }
    let h = inverse_sqrt_two_minus_x2(s_max);
    for s in (4..=s_max).step_by(2) {
        g[s] = std::f64::consts::FRAC_PI_2 * h[s];
    }
    g
}

/// Stored Chebyshev coefficients of `(2 - x^2)^{-1/2}` through `n_max`.
pub fn inverse_sqrt_two_minus_x2(n_max: usize) -> Vec<f64> {
    // (2 - x^2)^{-1/2} = sum_l c_l / (2^l sqrt2) x^{2l}, c_l = binom(2l, l)/4^l
    even_power_series_to_cheb(n_max, |l, c| c / (2f64.powi(l as i32) * std::f64::consts::SQRT_2))
}

/// Converts `sum_l w(l, c_l) x^{2l}` into stored Chebyshev coefficients, where
/// `c_l = binom(2l, l)/4^l` is passed to the weight for convenience. All
/// weights must be nonnegative and summable on `[-1, 1]`.
pub(crate) fn even_power_series_to_cheb(n_max: usize, weight: impl Fn(usize, f64) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    for m in (0..=n_max).step_by(2) {
        let mm = m / 2;
        let mut acc = 0.0;
        let mut c = 1.0;
        for l in 0..mm {
            c *= (2 * l + 1) as f64 / (2 * l + 2) as f64;
        }
        let mut l = mm;
        loop {
            // x^{2l} = 2^{1-2l} sum' binom(2l, l - m') T_{2m'}
            let t = 2f64.powi(1 - 2 * l as i32) * binomial(2 * l, l - mm);
            let term = weight(l, c) * t;
            acc += term;
            if term <= 1e-19 * acc || l > 4000 {
                break;
            }
            c *= (2 * l + 1) as f64 / (2 * l + 2) as f64;
            l += 1;
        }
        out[m] = acc;
    }
    out
}

/// Residual of the linear relation between `G` values obtained from the
/// quartic `(2 - x^2)(1 - x^2)` at odd `s`:
///
/// ```text
/// G_{s+3} + G_{|s-3|} - 3 (G_{s+1} + G_{|s-1|})
///   + s/2 sum'_{l < s, l - s odd} [G_{l+4} + G_{|l-4|} - 8 (G_{l+2} + G_{|l-2|}) + 14 G_l]
/// ```
pub fn elliptic_g_relation(s: usize, g: &[f64]) -> f64 {
    relation_terms(s)
        .into_iter()
        .map(|(idx, coef)| coef.to_f64().unwrap_or(f64::NAN) * g[idx])
        .sum()
}

/// Coefficients of the `G` relation at odd `s`, merged by index.
fn relation_terms(s: usize) -> Vec<(usize, BigRational)> {
    let mut terms: Vec<(usize, BigRational)> = Vec::new();
    let mut add = |idx: usize, c: BigRational| match terms.iter_mut().find(|(i, _)| *i == idx) {
        Some((_, v)) => *v += c,
        None => terms.push((idx, c)),
    };
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    add(s + 3, r(1, 1));
    add(s.abs_diff(3), r(1, 1));
    add(s + 1, r(-3, 1));
    add(s.abs_diff(1), r(-3, 1));
    let mut l = (s + 1) % 2;
    while l < s {
        let half = if l == 0 { r(s as i64, 4) } else { r(s as i64, 2) };
        add(l + 4, half.clone());
        add(l.abs_diff(4), half.clone());
        add(l + 2, -half.clone() * r(8, 1));
        add(l.abs_diff(2), -half.clone() * r(8, 1));
        add(l, half * r(14, 1));
        l += 2;
    }
    terms.retain(|(_, c)| !c.is_zero());
    terms
}

/// `G_0..G_{s_max}` by running the relations upward from `G_0` and `G_2`.
///
/// Loses roughly a decimal digit per step; kept as a check of the stable
/// values at low order.
pub fn elliptic_g_upward(s_max: usize) -> Vec<f64> {
    let (k, e) = elliptic_ke_half();
    let s2 = std::f64::consts::SQRT_2;
    exact_g_forms(s_max)
        .into_iter()
        .map(|(p, q)| s2 * (p.to_f64().unwrap_or(f64::NAN) * k + q.to_f64().unwrap_or(f64::NAN) * e))
        .collect()
}

/// Exact rationals `(p_s, q_s)` with `G_s = sqrt2 (p_s K + q_s E)` at modulus
/// `1/sqrt2`, from the relations run upward in rational arithmetic.
pub fn exact_g_forms(s_max: usize) -> Vec<(BigRational, BigRational)> {
    let zero = || (BigRational::zero(), BigRational::zero());
    let mut forms = vec![zero(); s_max.max(2) + 1];
    forms[0] = (BigRational::one(), BigRational::zero());
    forms[2] = (
        BigRational::from_integer(BigInt::from(3)),
        BigRational::from_integer(BigInt::from(-4)),
    );
    let mut s = 1;
    while s + 3 <= s_max {
        let top = s + 3;
        let terms = relation_terms(s);
        let lead = terms
            .iter()
            .find(|(i, _)| *i == top)
            .map(|(_, c)| c.clone())
            .expect("relation contains its top index");
        let (mut p, mut q) = zero();
        for (idx, c) in &terms {
            if *idx == top {
                continue;
            }
            p -= c * &forms[*idx].0;
            q -= c * &forms[*idx].1;
        }
        forms[top] = (p / &lead, q / &lead);
        s += 2;
    }
    forms.truncate(s_max + 1);
    forms
}

/// Hurwitz zeta `sum_{k>=0} (a + k)^{-s}` for `s > 1`, `a > 0`, by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::OutOfRange {
            what: "zeta exponent",
            value: s,
        });
    }
    if !(a > 0.0) {
        return Err(Error::OutOfRange {
            what: "Hurwitz shift",
            value: a,
        });
    }
    const BERNOULLI: [f64; 10] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
    ];
    let shift_to = 25f64.max(s + 20.0);
    let mut direct = 0.0;
    let mut x = a;
    let mut terms = Vec::new();
    while x < shift_to {
        terms.push(x.powf(-s));
        x += 1.0;
    }
    // smallest terms first
    for t in terms.iter().rev() {
        direct += t;
    }
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // B_{2j}/(2j)! * s (s+1) ... (s+2j-2) x^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = x.powf(-s - 1.0);
    let inv_x2 = 1.0 / (x * x);
    for (j, b) in BERNOULLI.iter().enumerate() {
        let jj = (j + 1) as f64;
        let term = b / fact * rising * power;
        tail += term;
        if term.abs() < 1e-20 * tail.abs() {
            break;
        }
        rising *= (s + 2.0 * jj - 1.0) * (s + 2.0 * jj);
        fact *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
        power *= inv_x2;
    }
    Ok(tail + direct)
}

/// `zeta(s) - 1`.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 2.0)
}

/// `binom(n, s) binom((s - 1)/2, l)` summed with alternating sign over `s`,
/// for `l = l_start..l_end`: the coefficients of `k^{n-2-2l}` in the large-`k`
/// expansion of the summand of `K_n` (zero for `l < n`).
fn k_expansion_coefficients(n: usize, l_start: usize, l_end: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); l_end.saturating_sub(l_start)];
    for s in 0..=n {
        let top = BigRational::new(BigInt::from(s as i64 - 1), BigInt::from(2));
        let mut b = BigRational::from_integer(binomial_exact(n, s));
        if s % 2 == 1 {
            b = -b;
        }
        // generalized binomial binom(top, l), advanced in l
        let mut gen = BigRational::one();
        for l in 0..l_end {
            if l >= l_start {
                out[l - l_start] += &b * &gen;
            }
            gen = gen * (&top - BigRational::from_integer(BigInt::from(l)))
                / BigRational::from_integer(BigInt::from(l + 1));
        }
    }
    out
}

fn binomial_exact(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Summands below this index are added directly in [`digamma_k`].
const K_DIRECT_LIMIT: usize = 16;
/// Number of expansion orders used for the tail of `K_n`.
const K_TAIL_ORDERS: usize = 16;

fn k_summand(k: usize, n: usize) -> f64 {
    let k = k as f64;
    let root = (k * k - 1.0).sqrt();
    // (k + root)^{-n} = (k - root)^n, with k - root = 1/(k + root)
    (1.0 / (k + root)).powi(n as i32) / (k * root)
}

/// `K_n = sum_{k>=2} 1/(k sqrt(k^2 - 1) (k + sqrt(k^2 - 1))^n)` for
/// `n = 0..=n_max`.
///
/// Terms `k < 16` are summed directly; the rest is expanded in powers of
/// `1/k`, which turns it into a rapidly converging series of Hurwitz zeta
/// values. With the split at `k = 2` this is the zeta series of the
/// literature for `K_0` and `K_1`.
pub fn digamma_k(n_max: usize) -> Vec<f64> {
    (0..=n_max).map(|n| digamma_k_split(n, K_DIRECT_LIMIT)).collect()
}

/// `K_n` with the direct sum over `2 <= k < m` and the zeta-series tail from `m`.
pub fn digamma_k_split(n: usize, m: usize) -> f64 {
    let direct: f64 = (2..m).rev().map(|k| k_summand(k, n)).sum();
    // integral estimate of the tail; skipped once it is below the rounding level
    if m > 2 && k_summand(m, n) * m as f64 / (n + 1) as f64 <= 1e-20 * direct {
        return direct;
    }
    let orders = if m <= 2 { 60 } else { K_TAIL_ORDERS };
    let mut tail = 0.0;
    for (i, d) in k_expansion_coefficients(n, n, n + orders).iter().enumerate() {
        let d = d.to_f64().unwrap_or(0.0);
        if d == 0.0 {
            continue;
        }
        let l = n + i;
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let exponent = (2 * l + 2 - n) as f64;
        let z = hurwitz_zeta(exponent, m as f64).expect("exponent above one");
        tail += sign * d * z;
    }
    direct + tail
}

/// `K_n + K_{n+2}` from the binomial zeta series
/// `2 sum_{l >= floor((n+3)/2)} (-1)^l [zeta(2l - n) - 1] sum_s binom(n+1, s) binom((s-1)/2, l)`.
pub fn digamma_k_pair_sum(n: usize) -> f64 {
    let mut acc = 0.0;
    let start = (n + 3) / 2;
    for l in start..start + 80 {
        let mut inner = BigRational::zero();
        for s in 0..=n + 1 {
            let top = BigRational::new(BigInt::from(s as i64 - 1), BigInt::from(2));
            let mut gen = BigRational::one();
            for i in 0..l {
                gen = gen * (&top - BigRational::from_integer(BigInt::from(i)))
                    / BigRational::from_integer(BigInt::from(i + 1));
            }
            inner += BigRational::from_integer(BigInt::from(binomial_exact(n + 1, s))) * gen;
        }
        let inner = inner.to_f64().unwrap_or(0.0);
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let z = zeta_minus_one((2 * l - n) as f64).expect("exponent above one");
        let term = sign * inner * z;
        acc += term;
        if term.abs() < 1e-19 * acc.abs() && l > start + 4 {
            break;
        }
    }
    2.0 * acc
}

/// Sum of `term(k)` for `k >= start`, extrapolated from partial sums at
/// `n0, 2 n0, 4 n0, ...` terms assuming an error expansion in powers of the
/// cutoff's reciprocal.
pub fn richardson_sum(term: impl Fn(usize) -> f64, start: usize, n0: usize, levels: usize) -> f64 {
    let mut partial = Vec::with_capacity(levels);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut k = start;
    for level in 0..levels {
        let stop = start + (n0 << level);
        while k < stop {
            // Kahan compensated summation
            let y = term(k) - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            k += 1;
        }
        partial.push(sum);
    }
    let mut table = partial;
    for order in 1..levels {
        let factor = 2f64.powi(order as i32);
        table = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
    }
    table[0]
}

/// The four series obtained by evaluating the digamma expansion at `x = +-1`
/// and combining: their values are `1/2, 1, 1/8, 3/8`.
pub fn digamma_identities() -> [f64; 4] {
    let root = |k: usize| ((k * k - 1) as f64).sqrt();
    let first = |k: usize| {
        let (kf, r) = (k as f64, root(k));
        (kf - 1.0 + r) / ((kf + 1.0 + r) * kf * r)
    };
    let second = |k: usize| {
        let (kf, r) = (k as f64, root(k));
        (kf + 1.0 + r) / ((kf - 1.0 + r) * kf * r)
    };
    let third = |k: usize| {
        let (kf, r) = (k as f64, root(k));
        let w = kf + r;
        w / (kf * r * (w * w - 1.0))
    };
    let fourth = |k: usize| {
        let (kf, r) = (k as f64, root(k));
        let w = kf + r;
        w / (r * (w * w - 1.0))
    };
    let run = |t: &dyn Fn(usize) -> f64| richardson_sum(t, 2, 4096, 7);
    [run(&first), run(&second), run(&third), run(&fourth)]
}
