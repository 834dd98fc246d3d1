//! Division of `T_n` by a Chebyshev-basis denominator and the ascending
//! recurrence for the expansion coefficients of its reciprocal.
//!
//! For a denominator `B = b_0 T_0 + ... + b_k T_k` (plain sum) every `T_n`
//! with `n >= k` splits uniquely as
//!
//! ```text
//! T_n = (d_0 T_0 + ... + d_{n-k} T_{n-k}) B + c_0/2 T_0 + c_1 T_1 + ... + c_{k-1} T_{k-1}
//! ```
//!
//! and the coefficients of `1/B` then satisfy
//! `a_n = 2 d_0 + c_0 a_0 / 2 + c_1 a_1 + ... + c_{k-1} a_{k-1}`.

use crate::error::{Error, Result};
use crate::series::{Basis, ChebSeries};

/// Leading coefficients with magnitude below this are treated as zero.
pub const DEGENERATE_LEADING: f64 = 1e-300;

/// Quotient `d` and remainder `c` of `T_n` divided by the denominator.
///
/// `c[0]` is stored unhalved, like the zeroth coefficient of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisionState {
    pub n: usize,
    pub d: Vec<f64>,
    pub c: Vec<f64>,
}

impl DivisionState {
    /// `T_n` for `n < k`: the polynomial is its own remainder.
    pub fn trivial(n: usize, k: usize) -> Self {
        assert!(n < k, "trivial division state needs n < k");
        let mut c = vec![0.0; k];
        c[n] = if n == 0 { 2.0 } else { 1.0 };
        Self { n, d: Vec::new(), c }
    }

    /// `2 d_0 + c_0 a_0 / 2 + sum_{i>=1} c_i a_i`.
    pub fn combine(&self, a_seed: &[f64]) -> f64 {
        let mut acc = 2.0 * self.d.first().copied().unwrap_or(0.0);
        for (i, (&ci, &ai)) in self.c.iter().zip(a_seed).enumerate() {
            acc += if i == 0 { 0.5 * ci * ai } else { ci * ai };
        }
        acc
    }

    /// Evaluates `(sum d_j T_j) B(x) + c_0/2 + sum c_j T_j(x)`, which equals
    /// `T_n(x)`.
    pub fn reconstruct(&self, b: &ChebSeries, x: f64) -> f64 {
        let basis = b.basis();
        let quotient = if self.d.is_empty() {
            0.0
        } else {
            ChebSeries::from_plain(basis, &self.d).eval(x)
        };
        let remainder = if self.c.is_empty() {
            0.0
        } else {
            ChebSeries::new(basis, self.c.clone()).eval(x)
        };
        quotient * b.eval(x) + remainder
    }
}

/// Plain-sum denominator coefficients and degree, with the leading one checked.
fn denominator(b: &ChebSeries) -> Result<(Vec<f64>, usize)> {
    let plain = b.normalize().plain_coeffs();
    let k = plain.len() - 1;
    let lead = plain[k];
    if lead.abs() < DEGENERATE_LEADING {
        return Err(Error::DegenerateDenominator { leading: lead });
    }
    Ok((plain, k))
}

/// Solves the triangular system for the division of `T_n` directly.
pub fn divide_tn_oracle(n: usize, b: &ChebSeries) -> Result<DivisionState> {
    let (bp, k) = denominator(b)?;
    if n < k {
        return Ok(DivisionState::trivial(n, k));
    }
    let bj = |i: usize| bp.get(i).copied().unwrap_or(0.0);

    // column j of the quotient part: plain coefficients of T_j B
    let column = |j: usize, l: usize| -> f64 {
        if j == 0 {
            return bj(l);
        }
        let mut v = 0.0;
        if l >= j {
            v += 0.5 * bj(l - j);
        }
        if l > 0 {
            v += 0.5 * bj(l + j);
        }
        if j >= l {
            v += 0.5 * bj(j - l);
        }
        v
    };

    let m = n - k;
    let mut d = vec![0.0; m + 1];
    // row l = j + k fixes d_j; descend from the top
    for j in (0..=m).rev() {
        let l = j + k;
        let rhs = if l == n { 1.0 } else { 0.0 };
        let known: f64 = ((j + 1)..=m).map(|i| d[i] * column(i, l)).sum();
        d[j] = (rhs - known) / column(j, l);
    }
    let mut c = vec![0.0; k];
    for (l, cl) in c.iter_mut().enumerate() {
        let rhs = if l == n { 1.0 } else { 0.0 };
        let known: f64 = (0..=m).map(|i| d[i] * column(i, l)).sum();
        let plain = rhs - known;
        *cl = if l == 0 { 2.0 * plain } else { plain };
    }
    Ok(DivisionState { n, d, c })
}

/// Advances from the states at `n` and `n - 1` to the state at `n + 1`.
pub fn division_step(prev: &DivisionState, prev2: &DivisionState, b: &ChebSeries) -> Result<DivisionState> {
    if prev2.n + 1 != prev.n {
        return Err(Error::IndexMismatch {
            expected: prev.n.wrapping_sub(1),
            found: prev2.n,
        });
    }
    let (bp, k) = denominator(b)?;
    if prev.c.len() != k || prev2.c.len() != k {
        return Err(Error::Contract(format!(
            "division states carry {} remainder terms, denominator degree is {k}",
            prev.c.len()
        )));
    }
    let n = prev.n;
    if n + 1 < k {
        return Ok(DivisionState::trivial(n + 1, k));
    }
    let bk = bp[k];
    let d = |j: isize| -> f64 {
        if j < 0 {
            0.0
        } else {
            prev.d.get(j as usize).copied().unwrap_or(0.0)
        }
    };
    let d2 = |j: usize| prev2.d.get(j).copied().unwrap_or(0.0);
    // plain remainder coefficients (c_0 halved)
    let plain = |s: &DivisionState, j: isize| -> f64 {
        if j < 0 || j as usize >= k {
            0.0
        } else if j == 0 {
            0.5 * s.c[0]
        } else {
            s.c[j as usize]
        }
    };
    // c_{k-1} as it appears in 2 T_1 times the remainder: unhalved when k = 1
    let top = if k == 0 {
        0.0
    } else if k == 1 {
        prev.c[0]
    } else {
        prev.c[k - 1]
    };
    let q = top / bk;

    let len = n + 2 - k;
    let mut dn = vec![0.0; len];
    for (j, slot) in dn.iter_mut().enumerate() {
        let ji = j as isize;
        *slot = match j {
            0 => d(1) + q - d2(0),
            1 => 2.0 * d(0) + d(2) - d2(1),
            _ => d(ji - 1) + d(ji + 1) - d2(j),
        };
    }

    let mut cn = vec![0.0; k];
    for (j, slot) in cn.iter_mut().enumerate() {
        let ji = j as isize;
        if j == 0 {
            let half = plain(prev, 1) - bp[0] * q - plain(prev2, 0);
            *slot = 2.0 * half;
        } else {
            // T_1 picks up the unhalved c_0 from 2 T_1 (c_0/2) T_0
            let lower = if j == 1 { prev.c[0] } else { plain(prev, ji - 1) };
            *slot = lower + plain(prev, ji + 1) - bp[j] * q - prev2.c[j];
        }
    }
    Ok(DivisionState { n: n + 1, d: dn, c: cn })
}

/// Rolling sequence of division states starting at `n = k`.
#[derive(Debug, Clone)]
pub struct DivisionStates<'a> {
    b: &'a ChebSeries,
    prev2: DivisionState,
    prev: DivisionState,
    started: bool,
}

impl<'a> DivisionStates<'a> {
    pub fn new(b: &'a ChebSeries) -> Result<Self> {
        let (_, k) = denominator(b)?;
        let first = divide_tn_oracle(k, b)?;
        let second = if k == 0 {
            divide_tn_oracle(1, b)?
        } else {
            division_step(&first, &DivisionState::trivial(k - 1, k), b)?
        };
        Ok(Self {
            b,
            prev2: first,
            prev: second,
            started: false,
        })
    }
}

impl Iterator for DivisionStates<'_> {
    type Item = Result<DivisionState>;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return Some(Ok(self.prev2.clone()));
        }
        let out = self.prev.clone();
        match division_step(&self.prev, &self.prev2, self.b) {
            Ok(next) => {
                self.prev2 = std::mem::replace(&mut self.prev, next);
                Some(Ok(out))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

/// Extends the leading coefficients `a_0..a_{k-1}` of `1/B` to `a_0..a_{n_max}`.
///
/// The recurrence is ascending and loses relative accuracy roughly like the
/// growth of the remainder coefficients `c`; compare against a direct method
/// when many terms are needed.
pub fn extend(a_seed: &[f64], b: &ChebSeries, n_max: usize) -> Result<ChebSeries> {
    let (_, k) = denominator(b)?;
    if a_seed.len() != k {
        return Err(Error::Contract(format!(
            "extend needs exactly {k} seed coefficients, got {}",
            a_seed.len()
        )));
    }
    let mut out: Vec<f64> = a_seed.iter().copied().take(n_max + 1).collect();
    if n_max >= k {
        for state in DivisionStates::new(b)?.take(n_max + 1 - k) {
            out.push(state?.combine(a_seed));
        }
    }
    Ok(ChebSeries::new(b.basis(), out))
}

/// The worked denominator `78.5 T_0 - 23.25 T_1 - 1.5 T_2 + 0.25 T_3`,
/// i.e. `(4 - x)^2 (5 + x)`.
pub fn example_denominator(basis: Basis) -> ChebSeries {
    ChebSeries::from_plain(basis, &[78.5, -23.25, -1.5, 0.25])
}
