//! Chebyshev-series toolkit: series arithmetic, expansion of inverse
//! polynomials and quotients, and polynomial fits with minimized relative
//! error.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod fit;
pub mod partial_fractions;
pub mod recurrence;
pub mod roots;
pub mod series;
pub mod special;
pub mod truncated;

pub use error::{Error, Result};
pub use series::{Basis, ChebSeries, MonomialPoly};
