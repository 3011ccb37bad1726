//! Diagonal quadratic potentials: the cohomology is the Clifford algebra with
//! ∂̄ᵢ² = −aᵢ and ∂̄ᵢ∂̄ⱼ = −∂̄ⱼ∂̄ᵢ, and the higher products vanish.

use ring_core::{Scalar, TruncatedSeries};

use crate::contraction::subset_basis;
use crate::error::AInfError;
use crate::transfer::{transfer_minimal_model, AInfStructure};

/// The coefficients aᵢ of w = Σ aᵢxᵢ², or an error if w has any other term.
pub fn diagonal_coefficients(w: &TruncatedSeries) -> Result<Vec<Scalar>, AInfError> {
    let n = w.ctx().n_vars();
    let mut a = vec![Scalar::zero(w.ctx().field()); n];
    for (m, c) in w.terms() {
        match (0..n).find(|&i| m.get(i) == 2) {
            Some(i) if m.degree() == 2 => a[i] = c.clone(),
            _ => return Err(AInfError::NotQuadratic(w.to_string())),
        }
    }
    if w.is_zero() {
        return Err(AInfError::NotQuadratic(w.to_string()));
    }
    Ok(a)
}

/// ∂̄_U ∂̄_V in Cl(−a), as (subset, coefficient).
pub fn clifford_multiply(a: &[Scalar], u: u32, v: u32) -> (u32, Scalar) {
    let field = a[0].field();
    let mut swaps = 0;
    for i in 0..a.len() {
        if v >> i & 1 == 1 {
            swaps += (u >> (i + 1)).count_ones();
        }
    }
    let mut c = Scalar::from_i64(field, if swaps % 2 == 1 { -1 } else { 1 });
    for (i, ai) in a.iter().enumerate() {
        if (u & v) >> i & 1 == 1 {
            c = c.mul_ref(&ai.neg_ref());
        }
    }
    (u ^ v, c)
}

/// Compares a structure on the subset basis against Cl(−a): m₂ must be the Clifford
/// product and m_k must vanish for 3 ≤ k ≤ its maximal arity.
pub fn matches_clifford(s: &AInfStructure, a: &[Scalar]) -> Result<bool, AInfError> {
    let basis = subset_basis(a.len());
    if s.dim() != basis.len() {
        return Ok(false);
    }
    let pos = |u: u32| basis.iter().position(|&b| b == u).expect("subset in basis");
    for (i, &u) in basis.iter().enumerate() {
        for (j, &v) in basis.iter().enumerate() {
            let (uv, c) = clifford_multiply(a, u, v);
            let mut want = vec![Scalar::zero(s.field()); s.dim()];
            want[pos(uv)] = c;
            if s.product(&[i, j])? != want {
                return Ok(false);
            }
        }
    }
    Ok(s.nonzero_products().all(|(args, _)| args.len() <= 2))
}

/// Transfers to arity `cap` and checks the result against the Clifford table.
pub fn clifford_check(w: &TruncatedSeries, cap: usize) -> Result<bool, AInfError> {
    if w.ctx().field().characteristic() == 2 {
        return Err(AInfError::CharacteristicTwo);
    }
    let a = diagonal_coefficients(w)?;
    let s = transfer_minimal_model(w, cap)?;
    matches_clifford(&s, &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ring_core::{parse_series, FieldSpec, RingCtx};

    fn q(v: i64) -> Scalar {
        Scalar::from_i64(FieldSpec::Rational, v)
    }

    #[test]
    fn multiplication_table() {
        let a = [q(1), q(3)];
        assert_eq!(clifford_multiply(&a, 1, 1), (0, q(-1)));
        assert_eq!(clifford_multiply(&a, 2, 2), (0, q(-3)));
        assert_eq!(clifford_multiply(&a, 1, 2), (3, q(1)));
        assert_eq!(clifford_multiply(&a, 2, 1), (3, q(-1)));
        // (∂̄₁∂̄₂)² = −∂̄₁²∂̄₂² = −3
        assert_eq!(clifford_multiply(&a, 3, 3), (0, q(-3)));
    }

    #[test]
    fn quadratic_potentials_give_clifford_algebras() {
        let c = RingCtx::rational(&["x", "y"]);
        for w in ["x^2 + y^2", "2*x^2 - 5*y^2"] {
            assert!(clifford_check(&parse_series(&c, w).unwrap(), 4).unwrap(), "{w}");
        }
        let c1 = RingCtx::rational(&["x"]);
        assert!(clifford_check(&parse_series(&c1, "x^2").unwrap(), 4).unwrap());
    }

    #[test]
    fn preconditions() {
        let c = RingCtx::rational(&["x", "y"]);
        for w in ["x^3", "x*y", "x^2 + x*y"] {
            assert!(matches!(
                clifford_check(&parse_series(&c, w).unwrap(), 3),
                Err(AInfError::NotQuadratic(_))
            ));
        }
        let c2 = RingCtx::new(&["x"], FieldSpec::prime(2).unwrap(), None).unwrap();
        assert!(matches!(
            clifford_check(&parse_series(&c2, "x^2").unwrap(), 3),
            Err(AInfError::CharacteristicTwo)
        ));
    }
}
