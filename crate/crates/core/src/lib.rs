//! Derivatives of composite functions, Jacobi-weighted norms and weighted
//! best polynomial approximation.
//!
//! The crate is organized bottom-up:
//!
//! * [`combinatorics`]: partition vectors, composition matrices, Bell
//!   polynomials and numbers with exact integer coefficients.
//! * [`jets`]: truncated Taylor arithmetic, univariate and multivariate.
//! * [`expr`]: a small expression language evaluated on numbers or jets.
//! * [`faadibruno`]: the explicit Faà di Bruno expansions, univariate and with
//!   a multivariate outer function.
//! * [`weighted`]: Jacobi weights, weighted sup norms, Sobolev-type norms and
//!   the derivative-estimate constants.
//! * [`minimax`]: Chebyshev interpolation and a weighted Remez exchange.
//! * [`harness`]: reproducible checks of the derivative and rate estimates,
//!   with JSON/CSV reports.
//! * [`cli`]: the `compose-approx` command line.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod expr;
pub mod faadibruno;
pub mod harness;
pub mod jets;
pub mod minimax;
pub mod numeric;
pub mod weighted;

pub use error::{Error, Result};
pub use expr::Expr;
pub use jets::{Jet1, JetN};
pub use numeric::Numeric;
