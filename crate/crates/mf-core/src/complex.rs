//! Two-periodic complexes of free modules, and the morphism complex of two factorizations.

use ring_core::{RingCtx, TruncatedSeries};

use crate::error::MfError;
use crate::factorization::MatrixFactorization;
use crate::matrix::RMatrix;
use crate::morphism::Parity;

/// R^e ⇄ R^o with d_even: R^e → R^o and d_odd: R^o → R^e.
///
/// `curvature` is the element c with both composites equal to c·id; it is
/// zero for honest complexes and w for the complex underlying a factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Complex {
    ctx: RingCtx,
    even_rank: usize,
    odd_rank: usize,
    d_even: RMatrix,
    d_odd: RMatrix,
    curvature: TruncatedSeries,
}

impl Z2Complex {
    pub fn new(d_even: RMatrix, d_odd: RMatrix, curvature: TruncatedSeries) -> Result<Self, MfError> {
        let ctx = d_even.ctx().clone();
        d_odd.ctx().check_same(&ctx)?;
        curvature.ctx().check_same(&ctx)?;
        let (e, o) = (d_even.cols(), d_even.rows());
        if d_odd.rows() != e || d_odd.cols() != o {
            return Err(MfError::Shape(format!(
                "d_even is {o}x{e} but d_odd is {}x{}",
                d_odd.rows(),
                d_odd.cols()
            )));
        }
        Ok(Z2Complex { ctx, even_rank: e, odd_rank: o, d_even, d_odd, curvature })
    }

    /// An untwisted complex (both composites zero).
    pub fn untwisted(d_even: RMatrix, d_odd: RMatrix) -> Result<Self, MfError> {
        let z = TruncatedSeries::zero(d_even.ctx());
        Self::new(d_even, d_odd, z)
    }

    /// X⁰ → X¹ by ψ and X¹ → X⁰ by φ; curvature w.
    pub fn from_mf(x: &MatrixFactorization) -> Self {
        Self::new(x.psi().clone(), x.phi().clone(), x.potential().clone()).expect("square blocks")
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn even_rank(&self) -> usize {
        self.even_rank
    }

    pub fn odd_rank(&self) -> usize {
        self.odd_rank
    }

    pub fn d_even(&self) -> &RMatrix {
        &self.d_even
    }

    pub fn d_odd(&self) -> &RMatrix {
        &self.d_odd
    }

    pub fn curvature(&self) -> &TruncatedSeries {
        &self.curvature
    }

    /// Both composites equal curvature·id.
    pub fn check(&self) -> bool {
        let a = self.d_odd.mul(&self.d_even).expect("shapes");
        let b = self.d_even.mul(&self.d_odd).expect("shapes");
        a == RMatrix::scalar_diag(&self.ctx, self.even_rank, &self.curvature)
            && b == RMatrix::scalar_diag(&self.ctx, self.odd_rank, &self.curvature)
    }

    /// The differential of the given parity (the one leaving that summand).
    pub fn d(&self, p: Parity) -> &RMatrix {
        match p {
            Parity::Even => &self.d_even,
            Parity::Odd => &self.d_odd,
        }
    }

    pub fn rank(&self, p: Parity) -> usize {
        match p {
            Parity::Even => self.even_rank,
            Parity::Odd => self.odd_rank,
        }
    }

    /// Sets the variables outside `keep` to zero and moves to the ring on `keep`.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<Self, MfError> {
        let target = self.ctx.restrict(keep)?;
        let n = self.ctx.n_vars();
        let mut map = vec![0; n];
        for (new, &old) in keep.iter().enumerate() {
            self.ctx.check_var(old)?;
            map[old] = new;
        }
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let kill = |s: &TruncatedSeries| drop.iter().fold(s.clone(), |acc, &i| acc.set_var_zero(i));
        let mv = |m: &RMatrix| m.map(kill).rename_into(&target, &map);
        Self::new(mv(&self.d_even)?, mv(&self.d_odd)?, kill(&self.curvature).rename_into(&target, &map)?)
    }
}

/// Position of the entry (i, j) of a 2r_Y × 2r_X block matrix in the hom basis.
///
/// Even: Hom(X⁰,Y⁰) then Hom(X¹,Y¹). Odd: Hom(X⁰,Y¹) then Hom(X¹,Y⁰). Row-major in each block.
fn hom_index(rx: usize, ry: usize, i: usize, j: usize) -> (Parity, usize) {
    let (bi, bj) = (i / ry, j / rx);
    let (li, lj) = (i % ry, j % rx);
    let local = li * rx + lj;
    let block = ry * rx;
    match (bi, bj) {
        (0, 0) => (Parity::Even, local),
        (1, 1) => (Parity::Even, block + local),
        (1, 0) => (Parity::Odd, local),
        _ => (Parity::Odd, block + local),
    }
}

fn hom_entry(rx: usize, ry: usize, p: Parity, k: usize) -> (usize, usize) {
    let block = ry * rx;
    let (second, local) = (k / block, k % block);
    let (li, lj) = (local / rx, local % rx);
    let (bi, bj) = match (p, second) {
        (Parity::Even, 0) => (0, 0),
        (Parity::Even, _) => (1, 1),
        (Parity::Odd, 0) => (1, 0),
        (Parity::Odd, _) => (0, 1),
    };
    (bi * ry + li, bj * rx + lj)
}

/// The morphism complex Hom(X, Y) with d(f) = d_Y f − (−1)^{|f|} f d_X.
/// Each parity has rank 2·r_X·r_Y; the result is untwisted.
pub fn hom_complex(x: &MatrixFactorization, y: &MatrixFactorization) -> Result<Z2Complex, MfError> {
    x.ctx().check_same(y.ctx())?;
    if x.potential() != y.potential() {
        return Err(MfError::PotentialMismatch(x.potential().to_string(), y.potential().to_string()));
    }
    let (rx, ry) = (x.rank(), y.rank());
    let (dx, dy) = (x.differential(), y.differential());
    let n = 2 * rx * ry;
    let ctx = x.ctx();
    let mut d_even = RMatrix::zeros(ctx, n, n);
    let mut d_odd = RMatrix::zeros(ctx, n, n);
    for (p, d) in [(Parity::Even, &mut d_even), (Parity::Odd, &mut d_odd)] {
        for col in 0..n {
            let (i, j) = hom_entry(rx, ry, p, col);
            // d(E_ij) = d_Y[:, i] e_jᵀ − s·e_i d_X[j, :]
            for k in 0..2 * ry {
                let a = dy.get(k, i);
                if !a.is_zero() {
                    let (q, row) = hom_index(rx, ry, k, j);
                    debug_assert_eq!(q, p.flip());
                    let cur = d.get(row, col) + a;
                    d.set(row, col, cur);
                }
            }
            for l in 0..2 * rx {
                let b = dx.get(j, l);
                if !b.is_zero() {
                    let (_, row) = hom_index(rx, ry, i, l);
                    let cur = match p {
                        Parity::Even => d.get(row, col) - b,
                        Parity::Odd => d.get(row, col) + b,
                    };
                    d.set(row, col, cur);
                }
            }
        }
    }
    Z2Complex::untwisted(d_even, d_odd)
}

/// Coordinates of a block matrix of the given parity in the hom basis.
pub fn hom_coordinates(rx: usize, ry: usize, p: Parity, m: &RMatrix) -> Vec<TruncatedSeries> {
    (0..2 * rx * ry)
        .map(|k| {
            let (i, j) = hom_entry(rx, ry, p, k);
            m.get(i, j).clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::MFMorphism;
    use ring_core::parse_series;

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
    fn index_maps_are_inverse() {
        for (rx, ry) in [(1, 1), (2, 3), (3, 2)] {
            for p in [Parity::Even, Parity::Odd] {
                for k in 0..2 * rx * ry {
                    let (i, j) = hom_entry(rx, ry, p, k);
                    assert_eq!(hom_index(rx, ry, i, j), (p, k));
                }
            }
        }
    }

    #[test]
    fn hom_squares_to_zero() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        let h = hom_complex(&x, &x).unwrap();
        assert_eq!((h.even_rank(), h.odd_rank()), (2, 2));
        assert!(h.check());
        let y = x.direct_sum(&MatrixFactorization::trivial(x.potential())).unwrap();
        let h = hom_complex(&x, &y).unwrap();
        assert_eq!(h.even_rank(), 4);
        assert!(h.check());
    }

    #[test]
    fn hom_matches_boundary() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        let y = x.direct_sum(&x.shift()).unwrap();
        let h = hom_complex(&x, &y).unwrap();
        let f01 = RMatrix::from_rows(&c, vec![vec![parse_series(&c, "1").unwrap()], vec![parse_series(&c, "x").unwrap()]]).unwrap();
        let f10 = RMatrix::from_rows(&c, vec![vec![parse_series(&c, "x^2").unwrap()], vec![parse_series(&c, "3").unwrap()]]).unwrap();
        let f = MFMorphism::odd(&x, &y, &f01, &f10).unwrap();
        let coords = hom_coordinates(1, 2, Parity::Odd, f.matrix());
        let expect = hom_coordinates(1, 2, Parity::Even, &f.boundary());
        for (row, e) in expect.iter().enumerate() {
            let mut acc = TruncatedSeries::zero(&c);
            for (col, v) in coords.iter().enumerate() {
                acc = &acc + &(h.d_odd().get(row, col) * v);
            }
            assert_eq!(&acc, e);
        }
    }

    #[test]
    fn factorization_complex_is_twisted() {
        let c = RingCtx::rational(&["x"]);
        let x = rank1(&c, "x^3", "x", "x^2");
        let k = Z2Complex::from_mf(&x);
        assert!(k.check());
        assert_eq!(k.curvature(), x.potential());
        let r = Z2Complex::from_mf(&x.direct_sum(&x).unwrap());
        assert!(r.check());
    }

    #[test]
    fn restriction_sets_variables_to_zero() {
        let c = RingCtx::rational(&["x", "y"]);
        let s = |e: &str| parse_series(&c, e).unwrap();
        let x = MatrixFactorization::new(
            s("x*y+y^2"),
            RMatrix::scalar_diag(&c, 1, &s("x+y")),
            RMatrix::scalar_diag(&c, 1, &s("y")),
        )
        .unwrap();
        let r = Z2Complex::from_mf(&x).restrict_to(&[0]).unwrap();
        assert_eq!(r.ctx().n_vars(), 1);
        assert_eq!(r.d_odd().get(0, 0).to_string(), "x");
        assert!(r.d_even().is_zero());
        assert!(r.curvature().is_zero());
    }
}
