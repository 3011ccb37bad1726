//! Morphisms of factorizations, closedness, cones.

use ring_core::TruncatedSeries;

use crate::error::MfError;
use crate::factorization::MatrixFactorization;
use crate::matrix::RMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// An R-linear map X → Y of pure parity, stored as the full block matrix
/// from X⁰ ⊕ X¹ to Y⁰ ⊕ Y¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MFMorphism {
    source: MatrixFactorization,
    target: MatrixFactorization,
    parity: Parity,
    matrix: RMatrix,
}

impl MFMorphism {
    /// Even map with components f⁰: X⁰ → Y⁰ and f¹: X¹ → Y¹.
    pub fn even(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        f0: &RMatrix,
        f1: &RMatrix,
    ) -> Result<Self, MfError> {
        let (rx, ry) = (source.rank(), target.rank());
        check_shape(f0, ry, rx)?;
        check_shape(f1, ry, rx)?;
        let ctx = source.ctx();
        let z = RMatrix::zeros(ctx, ry, rx);
        Self::raw(source, target, Parity::Even, RMatrix::block(f0, &z, &z, f1)?)
    }

    /// Odd map with components X⁰ → Y¹ and X¹ → Y⁰.
    pub fn odd(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        f01: &RMatrix,
        f10: &RMatrix,
    ) -> Result<Self, MfError> {
        let (rx, ry) = (source.rank(), target.rank());
        check_shape(f01, ry, rx)?;
        check_shape(f10, ry, rx)?;
        let z = RMatrix::zeros(source.ctx(), ry, rx);
        Self::raw(source, target, Parity::Odd, RMatrix::block(&z, f10, f01, &z)?)
    }

    fn raw(
        source: &MatrixFactorization,
        target: &MatrixFactorization,
        parity: Parity,
        matrix: RMatrix,
    ) -> Result<Self, MfError> {
        source.ctx().check_same(target.ctx())?;
        if source.potential() != target.potential() {
            return Err(MfError::PotentialMismatch(
                source.potential().to_string(),
                target.potential().to_string(),
            ));
        }
        Ok(MFMorphism { source: source.clone(), target: target.clone(), parity, matrix })
    }

    /// Rejects the morphism unless it is closed.
    pub fn into_closed(self) -> Result<Self, MfError> {
        if self.is_closed() {
            Ok(self)
        } else {
            Err(MfError::NotClosed)
        }
    }

    pub fn identity(x: &MatrixFactorization) -> Self {
        Self::scalar(x, &TruncatedSeries::one(x.ctx()))
    }

    /// Multiplication by a ring element; always closed.
    pub fn scalar(x: &MatrixFactorization, g: &TruncatedSeries) -> Self {
        let m = RMatrix::scalar_diag(x.ctx(), x.rank(), g);
        Self::even(x, x, &m, &m).expect("square")
    }

    pub fn zero(source: &MatrixFactorization, target: &MatrixFactorization) -> Result<Self, MfError> {
        let z = RMatrix::zeros(source.ctx(), target.rank(), source.rank());
        Self::even(source, target, &z, &z)
    }

    pub fn source(&self) -> &MatrixFactorization {
        &self.source
    }

    pub fn target(&self) -> &MatrixFactorization {
        &self.target
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    /// (f⁰, f¹) for even maps; (X⁰→Y¹, X¹→Y⁰) for odd maps.
    pub fn components(&self) -> (RMatrix, RMatrix) {
        let (rx, ry) = (self.source.rank(), self.target.rank());
        match self.parity {
            Parity::Even => (self.matrix.submatrix(0, 0, ry, rx), self.matrix.submatrix(ry, rx, ry, rx)),
            Parity::Odd => (self.matrix.submatrix(ry, 0, ry, rx), self.matrix.submatrix(0, rx, ry, rx)),
        }
    }

    /// d(f) = d_Y f − (−1)^{|f|} f d_X, as a block matrix.
    pub fn boundary(&self) -> RMatrix {
        let a = self.target.differential().mul(&self.matrix).expect("shapes");
        let b = self.matrix.mul(&self.source.differential()).expect("shapes");
        match self.parity {
            Parity::Even => a.sub(&b),
            Parity::Odd => a.add(&b),
        }
        .expect("shapes")
    }

    pub fn is_closed(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Mapping cone of a closed even map f: X → Y. C⁰ = Y⁰ ⊕ X¹, C¹ = Y¹ ⊕ X⁰,
    /// d(y, x) = (d_Y y + f x, −d_X x); upper triangular.
    pub fn cone(&self) -> Result<MatrixFactorization, MfError> {
        if self.parity != Parity::Even {
            return Err(MfError::Precondition("cone needs an even morphism".into()));
        }
        if !self.is_closed() {
            return Err(MfError::NotClosed);
        }
        let (x, y) = (&self.source, &self.target);
        let (f0, f1) = self.components();
        let z = RMatrix::zeros(x.ctx(), x.rank(), y.rank());
        let phi = RMatrix::block(y.phi(), &f0, &z, &x.psi().neg())?;
        let psi = RMatrix::block(y.psi(), &f1, &z, &x.phi().neg())?;
        MatrixFactorization::new(y.potential().clone(), phi, psi)
    }
}

fn check_shape(m: &RMatrix, r: usize, c: usize) -> Result<(), MfError> {
    if m.rows() == r && m.cols() == c {
        Ok(())
    } else {
        Err(MfError::Shape(format!("expected {r}x{c}, got {}x{}", m.rows(), m.cols())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_core::{parse_series, RingCtx};

    fn rank1(ctx: &RingCtx, w: &str, phi: &str, psi: &str) -> MatrixFactorization {
        let s = |e: &str| parse_series(ctx, e).unwrap();
        MatrixFactorization::new(
            s(w),
            RMatrix::scalar_diag(ctx, 1, &s(phi)),
            RMatrix::scalar_diag(ctx, 1, &s(psi)),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_closed_and_odd_maps_too() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        assert!(MFMorphism::identity(&x).is_closed());
        let one = RMatrix::identity(&c, 1);
        let mx = RMatrix::scalar_diag(&c, 1, &parse_series(&c, "-x").unwrap());
        let odd = MFMorphism::odd(&x, &x, &mx, &one).unwrap();
        assert!(odd.is_closed());
        let xx = RMatrix::scalar_diag(&c, 1, &parse_series(&c, "x").unwrap());
        assert!(!MFMorphism::odd(&x, &x, &xx, &one).unwrap().is_closed());
    }

    #[test]
    fn cone_examples() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        let g = parse_series(&c, "x").unwrap();
        let cone = MFMorphism::scalar(&x, &g).cone().unwrap();
        assert_eq!(cone.rank(), 2);
        assert!(cone.verify());
        let zero_cone = MFMorphism::zero(&x, &x).unwrap().cone().unwrap();
        assert_eq!(zero_cone, x.direct_sum(&x.shift()).unwrap());
    }

    #[test]
    fn non_closed_rejected() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        let one = RMatrix::identity(&c, 1);
        let zero = RMatrix::zeros(&c, 1, 1);
        let f = MFMorphism::even(&x, &x, &one, &zero).unwrap();
        assert!(!f.is_closed());
        assert_eq!(f.cone(), Err(MfError::NotClosed));
        assert!(f.into_closed().is_err());
    }
}
