//! Truncated multivariate power series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ctx::RingCtx;
use crate::error::RingError;
use crate::mono::{Exp, Mono};
use crate::scalar::Scalar;

/// A series under a ring context. No zero coefficients and nothing above the truncation degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: RingCtx,
    terms: BTreeMap<Mono, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(ctx: &RingCtx) -> Self {
        TruncatedSeries { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &RingCtx) -> Self {
        Self::constant(ctx, Scalar::one(ctx.field()))
    }

    pub fn constant(ctx: &RingCtx, c: Scalar) -> Self {
        Self::monomial(ctx, Mono::one(ctx.n_vars()), c)
    }

    pub fn from_i64(ctx: &RingCtx, c: i64) -> Self {
        Self::constant(ctx, Scalar::from_i64(ctx.field(), c))
    }

    pub fn var(ctx: &RingCtx, i: usize) -> Self {
        Self::monomial(ctx, Mono::var(ctx.n_vars(), i), Scalar::one(ctx.field()))
    }

    pub fn monomial(ctx: &RingCtx, m: Mono, c: Scalar) -> Self {
        let mut s = Self::zero(ctx);
        s.add_term(m, c);
        s
    }

    /// Builds from (exponents, coefficient) pairs, merging duplicates and truncating.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Scalar)>>(ctx: &RingCtx, it: I) -> Self {
        let mut s = Self::zero(ctx);
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    /// Convenience for tests and corpus data: integer coefficients.
    pub fn from_int_terms(ctx: &RingCtx, terms: &[(&[Exp], i64)]) -> Self {
        Self::from_terms(
            ctx,
            terms.iter().map(|(e, c)| (Mono::from_exps(e), Scalar::from_i64(ctx.field(), *c))),
        )
    }

    fn keeps(&self, m: &Mono) -> bool {
        self.ctx.truncation().is_none_or(|t| m.degree() <= t)
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Mono, c: Scalar) {
        assert_eq!(m.n_vars(), self.ctx.n_vars(), "exponent vector length");
        if c.is_zero() || !self.keeps(&m) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.ctx.field()))
    }

    /// Highest total degree present.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Lowest total degree present (the 𝔪-adic order).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Reduction modulo 𝔪: the constant term.
    pub fn residue(&self) -> Scalar {
        self.coeff(&Mono::one(self.ctx.n_vars()))
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        self.ctx.check_same(&o.ctx)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.ctx.check_same(&o.ctx)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg_ref());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.ctx.check_same(&o.ctx)?;
        let mut r = Self::zero(&self.ctx);
        let t = self.ctx.truncation();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some(t) = t {
                    if m1.degree() + m2.degree() > t {
                        continue;
                    }
                }
                r.add_term(m1.mul(m2), c1.mul_ref(c2));
            }
        }
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        TruncatedSeries {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&Scalar::from_i64(self.ctx.field(), c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.ctx);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Multiplies by a monomial.
    pub fn mul_mono(&self, m: &Mono) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())))
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self, RingError> {
        self.ctx.check_var(i)?;
        let f = self.ctx.field();
        Ok(Self::from_terms(
            &self.ctx,
            self.terms.iter().filter_map(|(m, c)| {
                let e = m.get(i);
                m.div_var(i)
                    .map(|q| (q, c.mul_ref(&Scalar::from_i64(f, e as i64))))
            }),
        ))
    }

    /// `self = xᵢ·q + r` with r free of xᵢ.
    pub fn split_by_variable(&self, i: usize) -> Result<(Self, Self), RingError> {
        self.ctx.check_var(i)?;
        let mut q = Self::zero(&self.ctx);
        let mut r = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            match m.div_var(i) {
                Some(d) => q.add_term(d, c.clone()),
                None => r.add_term(m.clone(), c.clone()),
            }
        }
        Ok((q, r))
    }

    /// Sets variable `i` to zero.
    pub fn set_var_zero(&self, i: usize) -> Self {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.get(i) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate_to(&self, d: u32) -> Self {
        TruncatedSeries {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Moves the series to `target`, sending variable i to variable `map[i]`.
    /// Several variables may land on the same target variable (substitution x' ↦ x).
    pub fn rename_into(&self, target: &RingCtx, map: &[usize]) -> Result<Self, RingError> {
        if map.len() != self.ctx.n_vars() {
            return Err(RingError::BadContext("variable map length".into()));
        }
        for &j in map {
            target.check_var(j)?;
        }
        if target.field() != self.ctx.field() {
            return Err(RingError::ContextMismatch(self.ctx.to_string(), target.to_string()));
        }
        let n = target.n_vars();
        Ok(Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.rename(n, map), c.clone()))))
    }

    /// Same terms under another context with the same variables (e.g. a different truncation).
    pub fn with_ctx(&self, ctx: &RingCtx) -> Result<Self, RingError> {
        if ctx.n_vars() != self.ctx.n_vars() || ctx.field() != self.ctx.field() {
            return Err(RingError::ContextMismatch(self.ctx.to_string(), ctx.to_string()));
        }
        Ok(Self::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.clone(), c.clone()))))
    }

    /// Exact quotient by a monomial; errors if some term is not divisible.
    pub fn div_mono(&self, m: &Mono) -> Result<Self, RingError> {
        let mut r = Self::zero(&self.ctx);
        for (a, c) in &self.terms {
            let q = m
                .div(a)
                .ok_or_else(|| RingError::InexactDivision(format!("{self} by monomial")))?;
            r.add_term(q, c.clone());
        }
        Ok(r)
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            return "0".into();
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { c.neg_ref() } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                m.write_with(names, &mut s).expect("string write");
            }
        }
        s
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.ctx.names()))
    }
}

macro_rules! series_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&TruncatedSeries> for &TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, o: &TruncatedSeries) -> TruncatedSeries {
                self.$imp(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, o: TruncatedSeries) -> TruncatedSeries {
                (&self).$imp(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(self)
    }
}

impl Neg for TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::neg(&self)
    }
}

/// w̃ᵢ = (w(y₁..y_{i-1}, xᵢ..xₙ) − w(y₁..yᵢ, x_{i+1}..xₙ)) / (xᵢ − yᵢ) in the doubled ring
/// (variables x₁..xₙ then y₁..yₙ). Computed monomialwise and checked by multiplying back.
pub fn difference_quotient(
    w: &TruncatedSeries,
    i: usize,
    doubled: &RingCtx,
) -> Result<TruncatedSeries, RingError> {
    let ctx = w.ctx();
    let n = ctx.n_vars();
    ctx.check_var(i)?;
    if doubled.n_vars() != 2 * n || doubled.field() != ctx.field() {
        return Err(RingError::BadContext("expected the doubled context".into()));
    }
    let dctx = doubled.with_truncation(None);
    let mut q = TruncatedSeries::zero(&dctx);
    for (m, c) in w.terms() {
        let e = m.get(i);
        if e == 0 {
            continue;
        }
        let mut base = Mono::one(2 * n);
        for j in 0..n {
            let slot = if j < i { n + j } else { j };
            if j != i {
                base.set(slot, m.get(j));
            }
        }
        for a in 0..e {
            let mut t = base.clone();
            t.set(i, a);
            t.set(n + i, e - 1 - a);
            q.add_term(t, c.clone());
        }
    }
    let before: Vec<usize> = (0..n).map(|j| if j < i { n + j } else { j }).collect();
    let after: Vec<usize> = (0..n).map(|j| if j <= i { n + j } else { j }).collect();
    let wp = w.with_ctx(&ctx.with_truncation(None))?;
    let lhs = wp.rename_into(&dctx, &before)? - wp.rename_into(&dctx, &after)?;
    let delta = TruncatedSeries::var(&dctx, i) - TruncatedSeries::var(&dctx, n + i);
    if &delta * &q != lhs {
        return Err(RingError::InexactDivision(format!("difference quotient of {w} in variable {i}")));
    }
    q.with_ctx(doubled)
}
