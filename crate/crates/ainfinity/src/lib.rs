//! The endomorphism dg algebra of the stabilized residue field and its minimal
//! A∞ model, computed by homotopy transfer along an explicit contraction.

pub mod clifford;
pub mod contraction;
pub mod dga;
pub mod error;
pub mod stasheff;
pub mod superop;
pub mod transfer;

pub use clifford::{clifford_check, clifford_multiply, diagonal_coefficients, matches_clifford};
pub use contraction::{subset_basis, subset_label, Contraction};
pub use dga::{reverse_peeling, DgAlgebra};
pub use error::AInfError;
pub use stasheff::{stasheff_lhs, stasheff_violations, StasheffViolation};
pub use superop::{clifford_product, OpKey, SuperOp};
pub use transfer::{coefficient_mismatches, monomial_tuples, transfer, transfer_minimal_model, AInfStructure};

/// Builds the contraction for w ∈ 𝔪².
pub fn build_contraction(w: &ring_core::TruncatedSeries) -> Result<Contraction, AInfError> {
    Ok(Contraction::new(DgAlgebra::new(w)?))
}
