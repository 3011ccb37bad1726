//! Homotopy transfer of the product of A to its cohomology.
//!
//! The recursion runs on the suspension, where the only signs are Koszul signs. In
//! terms of A, with H₁ = ι and Hₖ = h∘λₖ,
//!
//!   λₙ(a₁..aₙ) = Σ_{k+l=n} (−1)^{|Hₖ|} Hₖ(a₁..aₖ) · H_l(aₖ₊₁..aₙ),
//!
//! where |H₁| = |a₁| and |Hₖ| = |a₁|+…+|aₖ|+k+1. Desuspending gives
//!
//!   mₙ = (−1)^{n(n−1)/2 + Σⱼ (n−j)(|aⱼ|+1)} p∘λₙ,   m₁ = p∘d∘ι,
//!
//! which satisfies the Stasheff identities in the form checked by `stasheff`.

use std::rc::Rc;

use ring_core::{FieldSpec, Scalar, TruncatedSeries};

use crate::contraction::Contraction;
use crate::dga::DgAlgebra;
use crate::error::AInfError;
use crate::superop::SuperOp;

/// A minimal A∞ structure on a finite basis, with all products up to a maximal arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfStructure {
    field: FieldSpec,
    basis: Vec<String>,
    degrees: Vec<u32>,
    max_arity: usize,
    /// products[k−1][tuple index]: sparse value of m_k.
    products: Vec<Vec<Vec<(usize, Scalar)>>>,
}

/// Position of a tuple among all tuples of its length, in lexicographic order.
fn tuple_index(dim: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * dim + a)
}

pub(crate) fn tuple_of(dim: usize, k: usize, mut idx: usize) -> Vec<usize> {
    let mut v = vec![0; k];
    for slot in v.iter_mut().rev() {
        *slot = idx % dim;
        idx /= dim;
    }
    v
}

impl AInfStructure {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Z/2-degree of a basis element.
    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn check_args(&self, args: &[usize]) -> Result<(), AInfError> {
        if args.is_empty() || args.len() > self.max_arity {
            return Err(AInfError::Arity { got: args.len(), max: self.max_arity });
        }
        match args.iter().find(|&&a| a >= self.dim()) {
            Some(&index) => Err(AInfError::BasisIndex { index, size: self.dim() }),
            None => Ok(()),
        }
    }

    /// m_k(args) as (basis index, coefficient) pairs with nonzero coefficients.
    pub fn product_sparse(&self, args: &[usize]) -> Result<&[(usize, Scalar)], AInfError> {
        self.check_args(args)?;
        Ok(&self.products[args.len() - 1][tuple_index(self.dim(), args)])
    }

    /// m_k(args) as a dense coefficient vector.
    pub fn product(&self, args: &[usize]) -> Result<Vec<Scalar>, AInfError> {
        let mut v = vec![Scalar::zero(self.field); self.dim()];
        for (i, c) in self.product_sparse(args)? {
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// Replaces one value; used to build perturbed structures.
    pub fn set_product(&mut self, args: &[usize], value: &[Scalar]) -> Result<(), AInfError> {
        self.check_args(args)?;
        let sparse = value.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone()));
        let idx = tuple_index(self.dim(), args);
        self.products[args.len() - 1][idx] = sparse.collect();
        Ok(())
    }

    /// All nonzero products as (args, value) in order of arity, then args.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (Vec<usize>, &[(usize, Scalar)])> + '_ {
        let dim = self.dim();
        self.products.iter().enumerate().flat_map(move |(k, table)| {
            table
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_empty())
                .map(move |(i, v)| (tuple_of(dim, k + 1, i), v.as_slice()))
        })
    }

    /// Builds a structure from explicit values; missing products are zero.
    pub fn from_parts(
        field: FieldSpec,
        basis: Vec<String>,
        degrees: Vec<u32>,
        max_arity: usize,
        values: impl IntoIterator<Item = (Vec<usize>, Vec<(usize, Scalar)>)>,
    ) -> Result<Self, AInfError> {
        let dim = basis.len();
        let products = (1..=max_arity).map(|k| vec![Vec::new(); dim.pow(k as u32)]).collect();
        let mut s = AInfStructure { field, basis, degrees, max_arity, products };
        for (args, v) in values {
            s.check_args(&args)?;
            if let Some((index, _)) = v.iter().find(|(i, _)| *i >= dim) {
                return Err(AInfError::BasisIndex { index: *index, size: dim });
            }
            let mut v: Vec<_> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_by_key(|(i, _)| *i);
            s.products[args.len() - 1][tuple_index(dim, &args)] = v;
        }
        Ok(s)
    }

    /// True when m₁ vanishes identically.
    pub fn is_minimal(&self) -> bool {
        self.products[0].iter().all(|v| v.is_empty())
    }
}

fn sparse(v: Vec<Scalar>) -> Vec<(usize, Scalar)> {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Runs the tree formula over a prepared contraction.
pub fn transfer(c: &Contraction, max_arity: usize) -> Result<AInfStructure, AInfError> {
    if max_arity < 2 {
        return Err(AInfError::Arity { got: max_arity, max: 2 });
    }
    let alg = c.algebra();
    let field = alg.ctx().field();
    let dim = c.dim();
    let degrees: Vec<u32> = c.basis().iter().map(|u| u.count_ones() % 2).collect();
    let m1 = Scalar::from_i64(field, -1);

    let mut products = Vec::with_capacity(max_arity);
    products.push((0..dim).map(|i| sparse(c.p(&alg.d(c.iota(i))))).collect::<Vec<_>>());

    // H values of all tuples of length < max_arity, indexed per length.
    let mut hs: Vec<Vec<Rc<SuperOp>>> = vec![(0..dim).map(|i| Rc::new(c.iota(i).clone())).collect()];
    for n in 2..=max_arity {
        let count = dim.pow(n as u32);
        let mut table = Vec::with_capacity(count);
        let mut next_h = Vec::new();
        for idx in 0..count {
            let args = tuple_of(dim, n, idx);
            let deg = |a: &[usize]| a.iter().map(|&i| degrees[i] as usize).sum::<usize>();
            let mut lambda = SuperOp::zero(alg.ctx());
            for k in 1..n {
                let left = &hs[k - 1][tuple_index(dim, &args[..k])];
                let right = &hs[n - k - 1][tuple_index(dim, &args[k..])];
                if left.is_zero() || right.is_zero() {
                    continue;
                }
                // parity of the left factor as an element of A
                let left_deg = if k == 1 { deg(&args[..1]) } else { deg(&args[..k]) + k + 1 };
                let prod = left.mul(right);
                lambda = if left_deg % 2 == 1 { lambda.add(&prod.scale(&m1)) } else { lambda.add(&prod) };
            }
            // m_n = s⁻¹ b_n s^{⊗n} on the suspension
            let eps: usize = n * (n - 1) / 2
                + args.iter().enumerate().map(|(j, &a)| (n - 1 - j) * (degrees[a] as usize + 1)).sum::<usize>();
            let mut value = sparse(c.p(&lambda));
            if eps % 2 == 1 {
                for (_, v) in value.iter_mut() {
                    *v = v.neg_ref();
                }
            }
            table.push(value);
            if n < max_arity {
                next_h.push(Rc::new(c.h(&lambda)));
            }
        }
        products.push(table);
        if n < max_arity {
            hs.push(next_h);
        }
    }
    Ok(AInfStructure { field, basis: c.labels(), degrees, max_arity, products })
}

/// The minimal model of End(k^stab) for w, with products up to `max_arity`.
pub fn transfer_minimal_model(w: &TruncatedSeries, max_arity: usize) -> Result<AInfStructure, AInfError> {
    let c = Contraction::new(DgAlgebra::new(w)?);
    transfer(&c, max_arity)
}

/// For w = Σ r_e x^e, the tuple (∂̄₁^{e₁}, …, ∂̄ₙ^{eₙ}) in basis indices, one per term.
pub fn monomial_tuples(w: &TruncatedSeries) -> Vec<(Vec<usize>, Scalar)> {
    let n = w.ctx().n_vars();
    // in the subset basis, ∂̄ᵢ sits at index i + 1
    w.terms()
        .map(|(m, c)| ((0..n).flat_map(|i| std::iter::repeat_n(i + 1, m.get(i) as usize)).collect(), c.clone()))
        .collect()
}

/// The tuples of `monomial_tuples` whose m is not ± the coefficient times the unit. Length-2 tuples are compared on the unit component only.
pub fn coefficient_mismatches(s: &AInfStructure, w: &TruncatedSeries) -> Result<Vec<Vec<usize>>, AInfError> {
    let mut bad = Vec::new();
    for (args, r) in monomial_tuples(w) {
        if args.len() < 2 || args.len() > s.max_arity() {
            continue;
        }
        let v = s.product(&args)?;
        let unit_ok = v[0].abs() == r.abs();
        let rest_ok = args.len() == 2 || v[1..].iter().all(Scalar::is_zero);
        if !(unit_ok && rest_ok) {
            bad.push(args);
        }
    }
    Ok(bad)
}
