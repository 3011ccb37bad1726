//! The Stasheff identities
//!
//!   Σ_{r+s+t=N} (−1)^{r+st} (−1)^{s(|a₁|+…+|a_r|)} m_{r+1+t}(a₁..a_r, m_s(a_{r+1}..a_{r+s}), ..) = 0.

use std::collections::BTreeMap;

use ring_core::Scalar;

use crate::error::AInfError;
use crate::superop::add_into;
use crate::transfer::{tuple_of, AInfStructure};

/// A tuple on which an identity fails, with the nonzero left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StasheffViolation {
    pub args: Vec<usize>,
    pub value: Vec<(usize, Scalar)>,
}

/// Left-hand side of the identity of total arity N = args.len().
pub fn stasheff_lhs(s: &AInfStructure, args: &[usize]) -> Result<Vec<(usize, Scalar)>, AInfError> {
    let n = args.len();
    let mut acc = BTreeMap::new();
    for len in 1..=n {
        for r in 0..=n - len {
            let t = n - r - len;
            let outer_arity = r + 1 + t;
            let degs: u32 = args[..r].iter().map(|&a| s.degree(a)).sum();
            let odd = (r + len * t) % 2 == 1;
            let odd = odd ^ (len % 2 == 1 && degs % 2 == 1);
            if len > s.max_arity() || outer_arity > s.max_arity() {
                // only reachable with N = max arity + 1, where the other factor is m₁ = 0
                debug_assert!(s.is_minimal());
                continue;
            }
            let inner = s.product_sparse(&args[r..r + len])?;
            let mut outer_args = Vec::with_capacity(outer_arity);
            for (b, cb) in inner {
                outer_args.clear();
                outer_args.extend_from_slice(&args[..r]);
                outer_args.push(*b);
                outer_args.extend_from_slice(&args[r + len..]);
                let cb = if odd { cb.neg_ref() } else { cb.clone() };
                for (i, c) in s.product_sparse(&outer_args)? {
                    add_into(&mut acc, *i, c.mul_ref(&cb));
                }
            }
        }
    }
    Ok(acc.into_iter().collect())
}

/// Checks every identity of total arity 1..=max_n on all basis tuples. max_n may exceed
/// the computed arity by one when m₁ = 0, since the missing terms all contain m₁.
pub fn stasheff_violations(s: &AInfStructure, max_n: usize) -> Result<Vec<StasheffViolation>, AInfError> {
    let limit = if s.is_minimal() { s.max_arity() + 1 } else { s.max_arity() };
    if max_n > limit {
        return Err(AInfError::Arity { got: max_n, max: limit });
    }
    let dim = s.dim();
    let mut bad = Vec::new();
    for n in 1..=max_n {
        for idx in 0..dim.pow(n as u32) {
            let args = tuple_of(dim, n, idx);
            let value = stasheff_lhs(s, &args)?;
            if !value.is_empty() {
                bad.push(StasheffViolation { args, value });
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::transfer_minimal_model;
    use ring_core::{parse_series, FieldSpec, RingCtx};

    #[test]
    fn transferred_structures_satisfy_identities() {
        for w in ["x^2", "x^3", "x^2 + x^3"] {
            let c = RingCtx::rational(&["x"]);
            let s = transfer_minimal_model(&parse_series(&c, w).unwrap(), 4).unwrap();
            assert!(stasheff_violations(&s, 5).unwrap().is_empty(), "{w}");
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let c = RingCtx::rational(&["x"]);
        let mut s = transfer_minimal_model(&parse_series(&c, "x^3").unwrap(), 4).unwrap();
        let f = FieldSpec::Rational;
        // the unit acting by 2 breaks associativity
        s.set_product(&[0, 1], &[Scalar::zero(f), Scalar::from_i64(f, 2)]).unwrap();
        let bad = stasheff_violations(&s, 4).unwrap();
        assert!(bad.iter().any(|v| v.args == [0, 0, 1]));
    }

    #[test]
    fn too_high_arity_is_an_error() {
        let c = RingCtx::rational(&["x"]);
        let s = transfer_minimal_model(&parse_series(&c, "x^3").unwrap(), 3).unwrap();
        assert!(stasheff_violations(&s, 5).is_err());
    }
}
