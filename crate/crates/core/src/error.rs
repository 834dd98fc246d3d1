use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("series bases differ ({left} vs {right})")]
    BasisMismatch { left: &'static str, right: &'static str },

    #[error("z = {z} lies on the branch cut of the expansion domain")]
    OnBranchCut { z: Complex64 },

    #[error("root {root} lies in or within {tolerance:e} of the expansion domain; the inverse is unbounded")]
    RootInDomain { root: Complex64, tolerance: f64 },

    #[error("root finder did not converge within {iterations} iterations (last step {last_step:e})")]
    RootFindingStalled { iterations: usize, last_step: f64 },

    #[error("recombined coefficient a_{index} keeps imaginary part {imag:e} (threshold {threshold:e})")]
    InconsistentDecomposition { index: usize, imag: f64, threshold: f64 },

    #[error("denominator leading coefficient is zero or negligible ({leading:e})")]
    DegenerateDenominator { leading: f64 },

    #[error("division states out of sequence: expected index {expected}, found {found}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("linear system is singular or ill-conditioned (condition estimate {condition:e}); denominator root near the domain")]
    NearRoot { condition: f64 },

    #[error("Newton iteration stalled after {iterations} iterations: singular Jacobian")]
    StalledFit { iterations: usize, last_b: Vec<f64> },

    #[error("denominator vanishes at x = {x}")]
    SingularPoint { x: f64 },

    #[error("relative error shows {found} extrema but {needed} are needed to equilibrate")]
    NotEquioscillating { found: usize, needed: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("{what} = {value} is outside the supported range")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("constant term d_0 of the power series denominator is zero")]
    ZeroConstantTerm,

    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
