//! The endomorphism dg algebra of k^stab as operators on R⟨θ⟩ with d = [δ, −].

use ring_core::{RingCtx, TruncatedSeries};

use crate::error::AInfError;
use crate::superop::SuperOp;

/// Splits w = Σ xⱼwⱼ with wⱼ ∈ k[x₁..xⱼ]: wₙ = w/xₙ, then w_{n−1} is the quotient of
/// w|_{xₙ=0} by x_{n−1}, and so on.
pub fn reverse_peeling(w: &TruncatedSeries) -> Result<Vec<TruncatedSeries>, AInfError> {
    let n = w.ctx().n_vars();
    let mut ws = vec![TruncatedSeries::zero(w.ctx()); n];
    let mut cur = w.clone();
    for j in (0..n).rev() {
        let (q, r) = cur.split_by_variable(j)?;
        ws[j] = q;
        cur = r;
    }
    if !cur.is_zero() {
        return Err(AInfError::NotInMaximalIdeal(w.to_string()));
    }
    Ok(ws)
}

/// A = R⟨θ, ∂⟩ with the odd element δ = Σ xᵢ∂ᵢ + wᵢθᵢ, so δ² = w.
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    ctx: RingCtx,
    potential: TruncatedSeries,
    witnesses: Vec<TruncatedSeries>,
    delta: SuperOp,
}

impl DgAlgebra {
    /// Requires w ∈ 𝔪². Computation is over exact polynomials, whatever the
    /// truncation of w's context.
    pub fn new(w: &TruncatedSeries) -> Result<Self, AInfError> {
        if w.terms().any(|(m, _)| m.degree() < 2) {
            return Err(AInfError::NotInSquare(w.to_string()));
        }
        let ctx = w.ctx().with_truncation(None);
        let w = w.with_ctx(&ctx)?;
        let witnesses = reverse_peeling(&w)?;
        let mut delta = SuperOp::zero(&ctx);
        for (i, wi) in witnesses.iter().enumerate() {
            let x = SuperOp::from_series(&TruncatedSeries::var(&ctx, i));
            delta = delta.add(&x.mul(&SuperOp::dtheta(&ctx, i)));
            delta = delta.add(&SuperOp::from_series(wi).mul(&SuperOp::theta(&ctx, i)));
        }
        Ok(DgAlgebra { ctx, potential: w, witnesses, delta })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn n_vars(&self) -> usize {
        self.ctx.n_vars()
    }

    pub fn potential(&self) -> &TruncatedSeries {
        &self.potential
    }

    pub fn witnesses(&self) -> &[TruncatedSeries] {
        &self.witnesses
    }

    pub fn delta(&self) -> &SuperOp {
        &self.delta
    }

    /// d(a) = δa − (−1)^{|a|} aδ.
    pub fn d(&self, a: &SuperOp) -> SuperOp {
        self.delta.commutator(a)
    }
}
