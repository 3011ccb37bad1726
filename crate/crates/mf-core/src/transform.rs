//! Integral transforms X ↦ X ⊗_R T for a kernel T over R ⊗ R′.

use crate::cohomology::{cohomology_over_r_with, Dims, StabilizationConfig};
use crate::complex::Z2Complex;
use crate::error::MfError;
use crate::factorization::MatrixFactorization;

/// X ⊗_R T as a factorization over k[x, y] of w′(y). The variables x of R are internal:
/// the module is free of finite rank over k[x, y] but not over k[y].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformResult {
    pub mf: MatrixFactorization,
    pub internal_vars: Vec<usize>,
}

impl TransformResult {
    /// Dimensions of the cohomology of k ⊗_{R′} (X ⊗_R T). Sets y = 0 and computes
    /// the cohomology of the resulting complex of free k[x]-modules.
    pub fn k_cohomology(&self, cfg: StabilizationConfig) -> Result<Dims, MfError> {
        let c = Z2Complex::from_mf(&self.mf).restrict_to(&self.internal_vars)?;
        Ok(cohomology_over_r_with(&c, cfg)?.dims)
    }

    /// The external variables y, in order.
    pub fn external_vars(&self) -> Vec<usize> {
        (0..self.mf.ctx().n_vars()).filter(|i| !self.internal_vars.contains(i)).collect()
    }
}

/// Applies the kernel T, whose first n variables are those of X's ring and whose
/// potential is −w(x) + w′(y). The shared variables are identified by substitution.
pub fn integral_transform(x: &MatrixFactorization, t: &MatrixFactorization) -> Result<TransformResult, MfError> {
    let n = x.ctx().n_vars();
    let nt = t.ctx().n_vars();
    if nt < n {
        return Err(MfError::Precondition(format!(
            "kernel has {nt} variables, needs at least the {n} of the source"
        )));
    }
    if x.ctx().field() != t.ctx().field() {
        return Err(MfError::Ring(ring_core::RingError::ContextMismatch(
            x.ctx().to_string(),
            t.ctx().to_string(),
        )));
    }
    let tensor = x.external_tensor(t)?;
    let outer: Vec<usize> = (n..nt).collect();
    let target = x.ctx().concat(&t.ctx().restrict(&outer)?)?;
    let map: Vec<usize> = (0..n).chain(0..n).chain(n..n + (nt - n)).collect();
    let mf = tensor.rename_into(&target, &map)?;
    let internal: Vec<usize> = (0..n).collect();
    if mf.potential().terms().any(|(m, _)| internal.iter().any(|&i| m.get(i) > 0)) {
        return Err(MfError::PotentialMismatch(
            format!("kernel potential {}", t.potential()),
            format!("-({}) + w'(y)", x.potential()),
        ));
    }
    Ok(TransformResult { mf, internal_vars: internal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_mod_k;
    use crate::matrix::RMatrix;
    use ring_core::{parse_series, RingCtx};

    fn rank1(ctx: &RingCtx, w: &str, phi: &str, psi: &str) -> MatrixFactorization {
        let s = |e: &str| parse_series(ctx, e).unwrap();
        MatrixFactorization::checked(
            s(w),
            RMatrix::scalar_diag(ctx, 1, &s(phi)),
            RMatrix::scalar_diag(ctx, 1, &s(psi)),
        )
        .unwrap()
    }

    fn diagonal_x2() -> MatrixFactorization {
        let c = RingCtx::rational(&["x", "y"]);
        rank1(&c, "y^2 - x^2", "x - y", "-(x + y)")
    }

    #[test]
    fn identity_kernel_keeps_dims() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^2", "x", "x");
        let out = integral_transform(&x, &diagonal_x2()).unwrap();
        assert!(out.mf.verify());
        assert_eq!(out.mf.potential().to_string(), "y^2");
        assert_eq!(out.external_vars(), vec![1]);
        let cfg = StabilizationConfig { n_max: 64 };
        let before = cohomology_mod_k(&Z2Complex::from_mf(&x)).unwrap();
        assert_eq!(out.k_cohomology(cfg).unwrap(), before);
        let shifted = integral_transform(&x, &diagonal_x2().shift()).unwrap();
        assert_eq!(shifted.k_cohomology(cfg).unwrap(), before.swapped());
        let triv = integral_transform(&MatrixFactorization::trivial(x.potential()), &diagonal_x2()).unwrap();
        assert_eq!(triv.k_cohomology(cfg).unwrap().total(), 0);
    }

    #[test]
    fn wrong_kernel_is_rejected() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        assert!(matches!(integral_transform(&x, &diagonal_x2()), Err(MfError::PotentialMismatch(..))));
    }
}
