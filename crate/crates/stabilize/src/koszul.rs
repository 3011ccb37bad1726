//! Koszul factorizations (ΛV, s₀ + s₁) for w = Σ fᵢwᵢ.

use mf_core::{MatrixFactorization, RMatrix};
use ring_core::{RingCtx, TruncatedSeries};

use crate::error::StabilizeError;

/// Generators f₁..f_m and witnesses w₁..w_m with Σ fᵢwᵢ = w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulData {
    ctx: RingCtx,
    generators: Vec<TruncatedSeries>,
    witnesses: Vec<TruncatedSeries>,
    potential: TruncatedSeries,
}

impl KoszulData {
    /// Checks Σ fᵢwᵢ = w exactly.
    pub fn new(
        w: &TruncatedSeries,
        generators: Vec<TruncatedSeries>,
        witnesses: Vec<TruncatedSeries>,
    ) -> Result<Self, StabilizeError> {
        if generators.is_empty() || generators.len() != witnesses.len() {
            return Err(StabilizeError::BadLength);
        }
        let ctx = w.ctx().clone();
        let mut acc = TruncatedSeries::zero(&ctx);
        for (f, g) in generators.iter().zip(&witnesses) {
            acc = acc.try_add(&f.try_mul(g)?)?;
        }
        if &acc != w {
            return Err(StabilizeError::WitnessMismatch { got: acc.to_string(), expected: w.to_string() });
        }
        Ok(KoszulData { ctx, generators, witnesses, potential: w.clone() })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn generators(&self) -> &[TruncatedSeries] {
        &self.generators
    }

    pub fn witnesses(&self) -> &[TruncatedSeries] {
        &self.witnesses
    }

    pub fn potential(&self) -> &TruncatedSeries {
        &self.potential
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Subsets of {0..m} as bitmasks, ordered by cardinality and then lexicographically.
pub fn exterior_basis(m: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (0..1u32 << m).collect();
    all.sort_by_key(|&s| (s.count_ones(), (0..m).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>()));
    all
}

/// Even-cardinality subsets, then odd ones, each in basis order.
pub fn parity_split(m: usize) -> (Vec<u32>, Vec<u32>) {
    exterior_basis(m).into_iter().partition(|s| s.count_ones() % 2 == 0)
}

fn below(s: u32, i: usize) -> u32 {
    (s & ((1u32 << i) - 1)).count_ones()
}

/// (ΛV, s₀ + s₁): s₀ contracts with the generators, s₁ wedges with the witnesses.
/// φ maps odd subsets to even ones, ψ even to odd; rank 2^{m−1}.
pub fn make_koszul_mf(kd: &KoszulData) -> Result<MatrixFactorization, StabilizeError> {
    let m = kd.len();
    let ctx = kd.ctx();
    let (even, odd) = parity_split(m);
    let pos = |list: &[u32], s: u32| list.iter().position(|&t| t == s).expect("subset listed");
    let r = even.len();
    let mut phi = RMatrix::zeros(ctx, r, r);
    let mut psi = RMatrix::zeros(ctx, r, r);
    for (src, tgt, mat) in [(&odd, &even, &mut phi), (&even, &odd, &mut psi)] {
        for (col, &s) in src.iter().enumerate() {
            for i in 0..m {
                let sign = if below(s, i).is_multiple_of(2) { 1 } else { -1 };
                let (t, coef) = if s >> i & 1 == 1 {
                    (s & !(1 << i), &kd.generators[i])
                } else {
                    (s | 1 << i, &kd.witnesses[i])
                };
                let row = pos(tgt, t);
                let cur = mat.get(row, col).try_add(&coef.scale_i64(sign))?;
                mat.set(row, col, cur);
            }
        }
    }
    Ok(MatrixFactorization::new(kd.potential().clone(), phi, psi)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_core::parse_series;

    #[test]
    fn basis_order() {
        assert_eq!(exterior_basis(3), vec![0, 1, 2, 4, 3, 5, 6, 7]);
        let (e, o) = parity_split(3);
        assert_eq!(e, vec![0, 3, 5, 6]);
        assert_eq!(o, vec![1, 2, 4, 7]);
    }

    #[test]
    fn koszul_examples() {
        let c = RingCtx::rational(&["x", "y"]);
        let s = |e: &str| parse_series(&c, e).unwrap();
        let kd = KoszulData::new(&s("x^3"), vec![s("x")], vec![s("x^2")]).unwrap();
        let k = make_koszul_mf(&kd).unwrap();
        assert_eq!((k.phi().get(0, 0).clone(), k.psi().get(0, 0).clone()), (s("x"), s("x^2")));
        let kd = KoszulData::new(&s("x^2+y^2"), vec![s("x"), s("y")], vec![s("x"), s("y")]).unwrap();
        let k = make_koszul_mf(&kd).unwrap();
        assert_eq!(k.rank(), 2);
        assert!(k.verify());
    }

    #[test]
    fn witness_identity_is_checked() {
        let c = RingCtx::rational(&["x"]);
        let s = |e: &str| parse_series(&c, e).unwrap();
        assert!(matches!(
            KoszulData::new(&s("x^3"), vec![s("x")], vec![s("x")]),
            Err(StabilizeError::WitnessMismatch { .. })
        ));
        assert_eq!(KoszulData::new(&s("x^3"), vec![], vec![]), Err(StabilizeError::BadLength));
    }
}
