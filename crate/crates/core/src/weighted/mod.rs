//! Jacobi weights, weighted sup norms and Sobolev-type norms on `[−1, 1]`.
//!
//! Sup norms are estimated numerically: dense Chebyshev sampling followed by
//! a Brent search around the largest sampled peaks. Nothing here is a
//! rigorous enclosure.

mod lemma;
mod sobolev;
mod supnorm;
mod weight;

pub use lemma::{beta, chained_coefficients, chained_lemma_constant, lemma_constant};
pub use sobolev::{
    derivative_norm, multivariate_sobolev_norm, sobolev_norm, sobolev_norm_report, MultiNormReport,
    SobolevReport, MAX_TENSOR_DIM,
};
pub use supnorm::{chebyshev_lobatto, weighted_sup_norm, GridConfig, NormReport};
pub use weight::{phi_eval, weight_eval, JacobiWeight};

pub(crate) use supnorm::maximize;
