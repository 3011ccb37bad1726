//! Dimensions of local quotient algebras R/I at the origin.
//!
//! dim R/(I + 𝔪^{N+1}) grows with N and, by Nakayama, is constant from the first N
//! where it agrees with N + 1. The monomial basis is the complement of the leading
//! (lowest graded-lex) monomials of the truncated ideal.

use std::collections::HashMap;

use mf_core::StabilizationConfig;
use ring_core::linalg::{normalize, Echelon};
use ring_core::{monomial_basis, Mono, TruncatedSeries};

use crate::error::HochschildError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalQuotient {
    pub dim: usize,
    pub basis: Vec<Mono>,
    pub stabilized_at: u32,
}

fn truncated_ideal(gens: &[TruncatedSeries], n: u32) -> (Vec<Mono>, Echelon) {
    let nv = gens[0].ctx().n_vars();
    let monos = monomial_basis(nv, n);
    let index: HashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut e = Echelon::new(gens[0].ctx().field());
    for g in gens {
        let ord = match g.order() {
            Some(o) if o <= n => o,
            _ => continue,
        };
        for m in monos.iter().take_while(|m| m.degree() + ord <= n) {
            let v = g
                .terms()
                .filter(|(a, _)| a.degree() + m.degree() <= n)
                .map(|(a, c)| (index[&a.mul(m)], c.clone()))
                .collect();
            e.insert(normalize(v));
        }
    }
    (monos, e)
}

/// dim R/(I + 𝔪^{N+1}).
pub fn quotient_dim_at(gens: &[TruncatedSeries], n: u32) -> usize {
    let (monos, e) = truncated_ideal(gens, n);
    monos.len() - e.rank()
}

/// The local quotient R/I for I generated by `gens`, which must share one context.
pub fn local_quotient(gens: &[TruncatedSeries], cfg: StabilizationConfig) -> Result<LocalQuotient, HochschildError> {
    assert!(!gens.is_empty(), "need at least one generator");
    let mut n = 1;
    while n < cfg.n_max {
        let a = quotient_dim_at(gens, n);
        if a == quotient_dim_at(gens, n + 1) {
            let (monos, e) = truncated_ideal(gens, n);
            let pivots: std::collections::HashSet<usize> = e.pivots().collect();
            let basis = monos.into_iter().enumerate().filter(|(i, _)| !pivots.contains(i)).map(|(_, m)| m).collect();
            return Ok(LocalQuotient { dim: a, basis, stabilized_at: n });
        }
        n *= 2;
    }
    Err(HochschildError::NotIsolated { cap: cfg.n_max })
}
