//! Hochschild invariants of MF(R, w) for an isolated singularity: the Jacobian and
//! Tyurina algebras, HH^* from the folded Koszul complex of the partials, HH_* by
//! parity, and cross-checks through the stabilized diagonal.

pub mod error;
pub mod jacobian;

use mf_core::{cohomology_mod_k, cohomology_over_r_with, hom_complex, Dims, StabilizationConfig, Z2Complex};
use ring_core::{Mono, TruncatedSeries};
use stabilize::{make_koszul_mf, stabilized_diagonal, KoszulData};

pub use error::HochschildError;
pub use jacobian::{local_quotient, quotient_dim_at, LocalQuotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianReport {
    pub milnor_number: usize,
    pub tyurina_number: usize,
    /// Monomials spanning R/(∂₁w, …, ∂ₙw).
    pub monomial_basis: Vec<Mono>,
    pub stabilized_at: u32,
}

fn require_square(w: &TruncatedSeries) -> Result<(), HochschildError> {
    match w.order() {
        Some(o) if o >= 2 => Ok(()),
        _ => Err(HochschildError::NotInSquare(w.to_string())),
    }
}

fn partials(w: &TruncatedSeries) -> Result<Vec<TruncatedSeries>, HochschildError> {
    (0..w.ctx().n_vars()).map(|i| Ok(w.partial_derivative(i)?)).collect()
}

pub fn jacobian_report_with(w: &TruncatedSeries, cfg: StabilizationConfig) -> Result<JacobianReport, HochschildError> {
    require_square(w)?;
    let w = w.with_ctx(&w.ctx().with_truncation(None))?;
    let ds = partials(&w)?;
    let milnor = local_quotient(&ds, cfg)?;
    let mut tg = ds;
    tg.push(w.clone());
    let tyurina = local_quotient(&tg, cfg)?;
    Ok(JacobianReport {
        milnor_number: milnor.dim,
        tyurina_number: tyurina.dim,
        monomial_basis: milnor.basis,
        stabilized_at: milnor.stabilized_at.max(tyurina.stabilized_at),
    })
}

pub fn jacobian_report(w: &TruncatedSeries) -> Result<JacobianReport, HochschildError> {
    jacobian_report_with(w, StabilizationConfig::default())
}

/// The Koszul complex of (∂₁w, …, ∂ₙw) folded mod 2, exterior powers ordered as in
/// the Koszul factorizations.
pub fn koszul_of_partials(w: &TruncatedSeries) -> Result<Z2Complex, HochschildError> {
    let w = w.with_ctx(&w.ctx().with_truncation(None))?;
    let ds = partials(&w)?;
    let zero = TruncatedSeries::zero(w.ctx());
    let kd = KoszulData::new(&zero, ds, vec![zero.clone(); w.ctx().n_vars()])?;
    Ok(Z2Complex::from_mf(&make_koszul_mf(&kd)?))
}

/// (even, odd) dimensions of HH^*, from the folded Koszul complex of the partials.
/// Checked against the Milnor number.
pub fn hochschild_cohomology_with(w: &TruncatedSeries, cfg: StabilizationConfig) -> Result<Dims, HochschildError> {
    require_square(w)?;
    let c = koszul_of_partials(w)?;
    let dims = cohomology_over_r_with(&c, cfg).map_err(HochschildError::lift)?.dims;
    let mu = jacobian_report_with(w, cfg)?.milnor_number;
    if dims != Dims::new(mu, 0) {
        return Err(HochschildError::Inconsistent(format!("HH^* = {dims}, Milnor number {mu}")));
    }
    Ok(dims)
}

pub fn hochschild_cohomology(w: &TruncatedSeries) -> Result<Dims, HochschildError> {
    hochschild_cohomology_with(w, StabilizationConfig::default())
}

/// (even, odd) dimensions of HH_*: the Milnor number in parity n mod 2.
pub fn hochschild_homology_with(w: &TruncatedSeries, cfg: StabilizationConfig) -> Result<Dims, HochschildError> {
    let mu = hochschild_cohomology_with(w, cfg)?.even;
    Ok(Dims::new(mu, 0).shifted(w.ctx().n_vars()))
}

pub fn hochschild_homology(w: &TruncatedSeries) -> Result<Dims, HochschildError> {
    hochschild_homology_with(w, StabilizationConfig::default())
}

/// HH^* computed a second way, as the endomorphisms of Δ^stab.
pub fn diagonal_endomorphism_dims(w: &TruncatedSeries, cfg: StabilizationConfig) -> Result<Dims, HochschildError> {
    let d = stabilized_diagonal(w)?;
    let h = hom_complex(&d, &d)?;
    Ok(cohomology_over_r_with(&h, cfg).map_err(HochschildError::lift)?.dims)
}

/// Whether the Koszul route and the Δ^stab route to HH^* agree.
pub fn diagonal_hh_crosscheck_with(w: &TruncatedSeries, cfg: StabilizationConfig) -> Result<bool, HochschildError> {
    let koszul = cohomology_over_r_with(&koszul_of_partials(w)?, cfg).map_err(HochschildError::lift)?.dims;
    Ok(diagonal_endomorphism_dims(w, cfg)? == koszul)
}

pub fn diagonal_hh_crosscheck(w: &TruncatedSeries) -> Result<bool, HochschildError> {
    diagonal_hh_crosscheck_with(w, StabilizationConfig::default())
}

/// Whether k⊗dual(Δ^stab) and k⊗shift^n(Δ^stab) have the same dimensions.
pub fn calabi_yau_parity_check(w: &TruncatedSeries) -> Result<bool, HochschildError> {
    require_square(w)?;
    let d = stabilized_diagonal(w)?;
    let n = w.ctx().n_vars();
    let dual = cohomology_mod_k(&Z2Complex::from_mf(&d.dual()))?;
    let shifted = cohomology_mod_k(&Z2Complex::from_mf(&d.shift_by(n)))?;
    Ok(dual == shifted)
}

/// Everything the `hh` command reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildReport {
    pub hh_even: usize,
    pub hh_odd: usize,
    pub milnor: usize,
    pub tyurina: usize,
    pub homology_parity: usize,
    /// Periodic cyclic homology, equal to HH_* because HH_* sits in one parity.
    pub hp: usize,
    pub stabilized_at: u32,
}

pub fn hochschild_report(w: &TruncatedSeries, cfg: StabilizationConfig) -> Result<HochschildReport, HochschildError> {
    let hh = hochschild_cohomology_with(w, cfg)?;
    let j = jacobian_report_with(w, cfg)?;
    Ok(HochschildReport {
        hh_even: hh.even,
        hh_odd: hh.odd,
        milnor: j.milnor_number,
        tyurina: j.tyurina_number,
        homology_parity: w.ctx().n_vars() % 2,
        hp: hh.total(),
        stabilized_at: j.stabilized_at,
    })
}
