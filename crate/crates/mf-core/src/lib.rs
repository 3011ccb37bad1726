//! Matrix factorizations over k[x₁..xₙ]: constructions, morphism complexes and
//! their cohomology.

pub mod cohomology;
pub mod complex;
pub mod error;
pub mod factorization;
pub mod matrix;
pub mod morphism;
pub mod transform;

pub use cohomology::{
    annihilates, cohomology_mod_k, cohomology_over_r, cohomology_over_r_with, dims_at, is_quasi_iso,
    CohomologyReport, Dims, StabilizationConfig,
};
pub use complex::{hom_complex, Z2Complex};
pub use error::MfError;
pub use factorization::{MatrixFactorization, Violation};
pub use matrix::RMatrix;
pub use morphism::{MFMorphism, Parity};
pub use transform::{integral_transform, TransformResult};
