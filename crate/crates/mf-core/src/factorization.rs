//! Matrix factorizations (φ, ψ) with φψ = ψφ = w·id and their basic operations.

use ring_core::{RingCtx, TruncatedSeries};

use crate::error::MfError;
use crate::matrix::RMatrix;

/// X = X⁰ ⊕ X¹ of common rank r, with φ: X¹ → X⁰ and ψ: X⁰ → X¹.
/// The differential is the odd block matrix [[0, φ], [ψ, 0]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    ctx: RingCtx,
    potential: TruncatedSeries,
    rank: usize,
    phi: RMatrix,
    psi: RMatrix,
}

/// Where the first failing entry of φψ − w or ψφ − w sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub product: &'static str,
    pub row: usize,
    pub col: usize,
}

impl MatrixFactorization {
    /// Shape-checked constructor; the defining identity is checked by `verify`.
    pub fn new(potential: TruncatedSeries, phi: RMatrix, psi: RMatrix) -> Result<Self, MfError> {
        let ctx = potential.ctx().clone();
        phi.ctx().check_same(&ctx)?;
        psi.ctx().check_same(&ctx)?;
        let r = phi.rows();
        if phi.cols() != r || psi.rows() != r || psi.cols() != r {
            return Err(MfError::Shape("phi and psi must be square of the same size".into()));
        }
        Ok(MatrixFactorization { ctx, potential, rank: r, phi, psi })
    }

    /// Like `new`, but rejects pairs that do not factor the potential.
    pub fn checked(potential: TruncatedSeries, phi: RMatrix, psi: RMatrix) -> Result<Self, MfError> {
        let x = Self::new(potential, phi, psi)?;
        match x.violation() {
            None => Ok(x),
            Some(v) => Err(MfError::NotFactorization(format!(
                "{} differs from w·id at ({}, {})",
                v.product, v.row, v.col
            ))),
        }
    }

    /// The rank-one factorization (1, w).
    pub fn trivial(w: &TruncatedSeries) -> Self {
        let ctx = w.ctx();
        let one = RMatrix::identity(ctx, 1);
        let ww = RMatrix::scalar_diag(ctx, 1, w);
        Self::new(w.clone(), one, ww).expect("rank one")
    }

    /// The zero object of rank 0.
    pub fn zero(w: &TruncatedSeries) -> Self {
        let z = RMatrix::zeros(w.ctx(), 0, 0);
        Self::new(w.clone(), z.clone(), z).expect("rank zero")
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn potential(&self) -> &TruncatedSeries {
        &self.potential
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn phi(&self) -> &RMatrix {
        &self.phi
    }

    pub fn psi(&self) -> &RMatrix {
        &self.psi
    }

    /// The 2r × 2r odd differential [[0, φ], [ψ, 0]] on X⁰ ⊕ X¹.
    pub fn differential(&self) -> RMatrix {
        let z = RMatrix::zeros(&self.ctx, self.rank, self.rank);
        RMatrix::block(&z, &self.phi, &self.psi, &z).expect("square blocks")
    }

    pub fn violation(&self) -> Option<Violation> {
        let wid = RMatrix::scalar_diag(&self.ctx, self.rank, &self.potential);
        for (name, p) in [
            ("phi*psi", self.phi.mul(&self.psi).expect("square")),
            ("psi*phi", self.psi.mul(&self.phi).expect("square")),
        ] {
            for i in 0..self.rank {
                for j in 0..self.rank {
                    if p.get(i, j) != wid.get(i, j) {
                        return Some(Violation { product: name, row: i, col: j });
                    }
                }
            }
        }
        None
    }

    /// φψ = ψφ = w·id, exactly (within the context's truncation).
    pub fn verify(&self) -> bool {
        self.violation().is_none()
    }

    /// Odd shift: (φ, ψ) ↦ (−ψ, −φ).
    pub fn shift(&self) -> Self {
        Self::new(self.potential.clone(), self.psi.neg(), self.phi.neg()).expect("same shapes")
    }

    /// `shift` applied `k` times (only the parity of k matters).
    pub fn shift_by(&self, k: usize) -> Self {
        if k % 2 == 1 {
            self.shift()
        } else {
            self.clone()
        }
    }

    /// Dual over −w: (φ, ψ) ↦ (ψᵀ, −φᵀ).
    pub fn dual(&self) -> Self {
        Self::new(-&self.potential, self.psi.transpose(), self.phi.transpose().neg()).expect("same shapes")
    }

    /// The same factorization with X¹ negated, i.e. (−φ, −ψ); dual∘dual lands here.
    pub fn negate_odd(&self) -> Self {
        Self::new(self.potential.clone(), self.phi.neg(), self.psi.neg()).expect("same shapes")
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self, MfError> {
        self.ctx.check_same(&o.ctx)?;
        if self.potential != o.potential {
            return Err(MfError::PotentialMismatch(self.potential.to_string(), o.potential.to_string()));
        }
        let z1 = RMatrix::zeros(&self.ctx, self.rank, o.rank);
        let z2 = RMatrix::zeros(&self.ctx, o.rank, self.rank);
        Self::new(
            self.potential.clone(),
            RMatrix::block(&self.phi, &z1, &z2, &o.phi)?,
            RMatrix::block(&self.psi, &z1, &z2, &o.psi)?,
        )
    }

    /// Z/2-graded external tensor over the concatenated variables, factoring w⊗1 + 1⊗w′.
    /// Even part X⁰⊗Y⁰ ⊕ X¹⊗Y¹, odd part X¹⊗Y⁰ ⊕ X⁰⊗Y¹.
    pub fn external_tensor(&self, o: &Self) -> Result<Self, MfError> {
        let ctx = self.ctx.concat(&o.ctx)?;
        let n = self.ctx.n_vars();
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..n + o.ctx.n_vars()).collect();
        let (px, sx) = (self.phi.rename_into(&ctx, &left)?, self.psi.rename_into(&ctx, &left)?);
        let (py, sy) = (o.phi.rename_into(&ctx, &right)?, o.psi.rename_into(&ctx, &right)?);
        let ix = RMatrix::identity(&ctx, self.rank);
        let iy = RMatrix::identity(&ctx, o.rank);
        let w = &self.potential.rename_into(&ctx, &left)? + &o.potential.rename_into(&ctx, &right)?;
        let psi = RMatrix::block(
            &sx.kron(&iy)?,
            &ix.kron(&py)?.neg(),
            &ix.kron(&sy)?,
            &px.kron(&iy)?,
        )?;
        let phi = RMatrix::block(
            &px.kron(&iy)?,
            &ix.kron(&py)?,
            &ix.kron(&sy)?.neg(),
            &sx.kron(&iy)?,
        )?;
        Self::new(w, phi, psi)
    }

    /// Moves the factorization along a variable map (substitution), recomputing nothing.
    pub fn rename_into(&self, target: &RingCtx, map: &[usize]) -> Result<Self, MfError> {
        Self::new(
            self.potential.rename_into(target, map)?,
            self.phi.rename_into(target, map)?,
            self.psi.rename_into(target, map)?,
        )
    }

    /// Same data under a context with a different truncation.
    pub fn with_ctx(&self, ctx: &RingCtx) -> Result<Self, MfError> {
        Self::new(self.potential.with_ctx(ctx)?, self.phi.with_ctx(ctx)?, self.psi.with_ctx(ctx)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_core::parse_series;

    fn s(ctx: &RingCtx, e: &str) -> TruncatedSeries {
        parse_series(ctx, e).unwrap()
    }

    fn rank1(ctx: &RingCtx, w: &str, phi: &str, psi: &str) -> MatrixFactorization {
        MatrixFactorization::new(
            s(ctx, w),
            RMatrix::scalar_diag(ctx, 1, &s(ctx, phi)),
            RMatrix::scalar_diag(ctx, 1, &s(ctx, psi)),
        )
        .unwrap()
    }

    #[test]
    fn verify_examples() {
        let c = RingCtx::rational(&["x", "y", "z"]);
        let w = s(&c, "x^3+y^3+z^3-3*x*y*z");
        let phi = RMatrix::from_rows(
            &c,
            ["x y z", "z x y", "y z x"]
                .iter()
                .map(|r| r.split(' ').map(|e| s(&c, e)).collect())
                .collect(),
        )
        .unwrap();
        let psi = phi.adjugate().unwrap();
        assert!(MatrixFactorization::new(w.clone(), phi, psi).unwrap().verify());
        assert!(MatrixFactorization::trivial(&w).verify());
        let x = RingCtx::rational(&["x"]);
        let bad = rank1(&x, "x^3", "x", "x");
        assert!(!bad.verify());
        assert_eq!(bad.violation().unwrap().product, "phi*psi");
    }

    #[test]
    fn shift_examples() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        assert_eq!(x.shift().shift(), x);
        assert_eq!(x.shift(), rank1(&c, "x^3", "-x^2", "-x"));
        let t = MatrixFactorization::trivial(&s(&c, "x^3"));
        assert_eq!(t.shift(), rank1(&c, "x^3", "-x^3", "-1"));
        assert!(t.shift().verify());
    }

    #[test]
    fn dual_examples() {
        let c = RingCtx::rational(&["x"]);
        let t = MatrixFactorization::trivial(&s(&c, "x^3"));
        assert!(t.dual().verify());
        assert_eq!(t.dual().potential(), &s(&c, "-x^3"));
        let x = rank1(&c, "x^3", "x", "x^2");
        assert_eq!(x.dual(), rank1(&c, "-x^3", "x^2", "-x"));
        assert!(x.dual().verify());
        assert_eq!(x.dual().dual(), x.negate_odd());
    }

    #[test]
    fn direct_sum_examples() {
        let c = RingCtx::rational(&["x"]);
        let a = rank1(&c, "x^3", "x", "x^2");
        let b = rank1(&c, "x^3", "x^2", "x");
        let ab = a.direct_sum(&b).unwrap();
        assert_eq!(ab.rank(), 2);
        assert!(ab.verify());
        assert_eq!(a.direct_sum(&MatrixFactorization::zero(a.potential())).unwrap(), a);
        let other = rank1(&c, "x^2", "x", "x");
        assert!(a.direct_sum(&other).is_err());
    }

    #[test]
    fn tensor_examples() {
        let cx = RingCtx::rational(&["x"]);
        let cy = RingCtx::rational(&["y"]);
        let a = rank1(&cx, "x^2", "x", "x");
        let b = rank1(&cy, "y^2", "y", "y");
        let t = a.external_tensor(&b).unwrap();
        assert_eq!(t.rank(), 2);
        assert!(t.verify());
        assert_eq!(t.potential().to_string(), "x^2 + y^2");
    }
}
