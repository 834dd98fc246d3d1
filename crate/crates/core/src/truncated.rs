//! Leading Chebyshev coefficients of `1/B` and `f/B` from a finite linear
//! system, assuming the quotient coefficients vanish beyond index `N`.
//!
//! With `B = b_0 T_0 + ... + b_k T_k` (plain sum) the quotient `sum' a_n T_n`
//! satisfies `M a = r` where `M` is symmetric with bandwidth `2k + 1`:
//!
//! ```text
//! M[0][c] = b_c,  M[r][0] = b_r,  M[r][r] = 2 b_0 + b_{2r},  M[r][c] = b_{|r-c|} + b_{r+c}
//! ```
//!
//! and `r = (2, 0, ..., 0)` for the reciprocal, `r = (f_0, 2 f_1, ..., 2 f_N)`
//! for the quotient.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::series::{ChebSeries, MonomialPoly};

/// Systems with a 1-norm condition number above this are rejected.
pub const CONDITION_LIMIT: f64 = 1e14;

/// The `(N+1) x (N+1)` band matrix, stored by diagonals `0..=k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSystem {
    n: usize,
    k: usize,
    b: ChebSeries,
    // diagonals[o][r] = M[r][r + o]
    diagonals: Vec<Vec<f64>>,
}

impl BandedSystem {
    /// Truncation index `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Half bandwidth, the denominator degree.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn denominator(&self) -> &ChebSeries {
        &self.b
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (lo, hi) = if r <= c { (r, c) } else { (c, r) };
        let o = hi - lo;
        if o > self.k || hi > self.n {
            return 0.0;
        }
        self.diagonals[o][lo]
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let size = self.n + 1;
        DMatrix::from_fn(size, size, |r, c| self.get(r, c))
    }
}

/// Assembles the band matrix for the denominator `b` truncated at `n`.
pub fn build_matrix(b: &ChebSeries, n: usize) -> Result<BandedSystem> {
    let b = b.normalize();
    let k = b.degree();
    if n < k {
        return Err(Error::Contract(format!(
            "truncation index N = {n} is below the denominator degree {k}"
        )));
    }
    let bj = |i: usize| b.plain(i);
    let entry = |r: usize, c: usize| -> f64 {
        if r == 0 {
            bj(c)
        } else if c == 0 {
            bj(r)
        } else if r == c {
            2.0 * bj(0) + bj(2 * r)
        } else {
            bj(r.abs_diff(c)) + bj(r + c)
        }
    };
    let diagonals = (0..=k)
        .map(|o| {
            (0..=(n.saturating_sub(o)))
                .filter(|r| r + o <= n)
                .map(|r| entry(r, r + o))
                .collect()
        })
        .collect();
    Ok(BandedSystem { n, k, b, diagonals })
}

/// LU factors of a [`BandedSystem`] with its condition estimate.
#[derive(Debug, Clone)]
pub struct FactoredSystem {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    condition: f64,
}

impl FactoredSystem {
    /// Estimate of the 1-norm condition number `|M|_1 |M^{-1}|_1`, never
    /// above the exact value.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        self.solve_vec(&DVector::from_column_slice(rhs)).as_slice().to_vec()
    }

    fn solve_vec(&self, rhs: &DVector<f64>) -> DVector<f64> {
        self.lu.solve(rhs).expect("factorization checked for singularity")
    }
}

/// Factors the system, rejecting singular or ill-conditioned matrices.
pub fn factor(sys: &BandedSystem) -> Result<FactoredSystem> {
    let m = sys.to_dense();
    let norm = one_norm(&m);
    let lu = m.lu();
    if !lu.is_invertible() {
        return Err(Error::NearRoot {
            condition: f64::INFINITY,
        });
    }
    let mut fac = FactoredSystem { lu, condition: 0.0 };
    let condition = norm * inverse_one_norm_estimate(&fac);
    if !condition.is_finite() || condition > CONDITION_LIMIT {
        return Err(Error::NearRoot { condition });
    }
    fac.condition = condition;
    Ok(fac)
}

/// Hager's estimate of `|M^{-1}|_1` with Higham's extra test vector. The
/// matrix is symmetric, so the transposed solves reuse the same factors.
fn inverse_one_norm_estimate(fac: &FactoredSystem) -> f64 {
    let n = fac.lu.l().nrows();
    let l1 = |v: &DVector<f64>| v.iter().map(|x| x.abs()).sum::<f64>();
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut est = 0.0;
    for iter in 0..5 {
        let y = fac.solve_vec(&x);
        let y_norm = l1(&y);
        if !y_norm.is_finite() {
            return f64::INFINITY;
        }
        if iter > 0 && y_norm <= est {
            break;
        }
        est = y_norm;
        let sign = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let z = fac.solve_vec(&sign);
        let (j, zj) = z.iter().enumerate().fold(
            (0, 0.0f64),
            |acc, (i, v)| if v.abs() > acc.1 { (i, v.abs()) } else { acc },
        );
        if iter > 0 && zj <= z.dot(&x) {
            break;
        }
        x = DVector::zeros(n);
        x[j] = 1.0;
    }
    let alt = DVector::from_fn(n, |i, _| {
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        s * (1.0 + i as f64 / (n.max(2) - 1) as f64)
    });
    est.max(2.0 * l1(&fac.solve_vec(&alt)) / (3.0 * n as f64))
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `a_0..a_N` of `1/B`, stored unhalved.
pub fn reciprocal(b: &ChebSeries, n: usize) -> Result<ChebSeries> {
    let sys = build_matrix(b, n)?;
    let fac = factor(&sys)?;
    let mut rhs = vec![0.0; n + 1];
    rhs[0] = 2.0;
    Ok(ChebSeries::new(b.basis(), fac.solve(&rhs)))
}

/// Quotient `f/B` truncated at `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quotient {
    pub series: ChebSeries,
    /// `f` had fewer than `N + 1` coefficients; the missing ones were taken as zero.
    pub padded_tail: bool,
    pub condition: f64,
}

fn division_rhs(f: &ChebSeries, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|r| if r == 0 { f.get(0) } else { 2.0 * f.get(r) })
        .collect()
}

/// `a_0..a_N` of `f/B`.
pub fn divide(f: &ChebSeries, b: &ChebSeries, n: usize) -> Result<Quotient> {
    f.check_same_basis(b)?;
    let sys = build_matrix(b, n)?;
    let fac = factor(&sys)?;
    let series = ChebSeries::new(b.basis(), fac.solve(&division_rhs(f, n)));
    Ok(Quotient {
        series,
        padded_tail: f.len() < n + 1,
        condition: fac.condition(),
    })
}

/// Right-hand side of `M delta = r - M (2, 0, ...)`, whose solution is the
/// deviation of the quotient from the constant one.
///
/// Forming it coefficient by coefficient as `f_r - b_r` keeps the deviation
/// accurate even when `f/B` is one to within a few ulps.
pub(crate) fn deviation_rhs(f: &ChebSeries, b: &ChebSeries, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|r| {
            if r == 0 {
                f.get(0) - b.get(0)
            } else {
                2.0 * (f.get(r) - b.get(r))
            }
        })
        .collect()
}

/// `a - (2, 0, ..., 0)` for the quotient `a` of `f/B`, solved directly for
/// the deviation.
pub fn divide_deviation(f: &ChebSeries, b: &ChebSeries, n: usize) -> Result<ChebSeries> {
    f.check_same_basis(b)?;
    let sys = build_matrix(b, n)?;
    let fac = factor(&sys)?;
    Ok(ChebSeries::new(b.basis(), fac.solve(&deviation_rhs(f, b, n))))
}

/// Chebyshev series of `1/d(x)` through the power series of the reciprocal.
///
/// The power series must converge on the whole domain, i.e. all roots of
/// `d` lie outside the unit disk. Intended as a cross-check.
pub fn reciprocal_via_power_series(d: &MonomialPoly, n_max: usize) -> Result<ChebSeries> {
    let d = d.coeffs();
    if d[0] == 0.0 {
        return Err(Error::ZeroConstantTerm);
    }
    let mut c = vec![0.0; n_max + 1];
    c[0] = 1.0 / d[0];
    for n in 1..=n_max {
        let acc: f64 = (1..=n.min(d.len() - 1)).map(|j| d[j] * c[n - j]).sum();
        c[n] = -acc / d[0];
    }
    Ok(ChebSeries::from_monomial(
        &MonomialPoly::new(c),
        crate::series::Basis::Standard,
    ))
}
