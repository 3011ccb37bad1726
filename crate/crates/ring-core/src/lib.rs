//! Exact arithmetic in k[x₁..xₙ] and its degree-truncated completion.
//!
//! Coefficients are rationals or residues mod p. Series carry their ring
//! context; mixing contexts is an error (the operator impls panic, the
//! `try_*` methods return it).

pub mod ctx;
pub mod error;
pub mod linalg;
pub mod mono;
pub mod parse;
mod rat;
pub mod scalar;
pub mod series;

pub use ctx::RingCtx;
pub use error::RingError;
pub use mono::{monomial_basis, monomials_of_degree, Exp, Mono};
pub use parse::{parse_series, variables_in};
pub use scalar::{FieldSpec, Scalar};
pub use series::{difference_quotient, TruncatedSeries};
