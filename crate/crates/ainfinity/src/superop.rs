//! Polynomial differential operators on R⟨θ₁..θₙ⟩ in normal form.
//!
//! A term is x^m θ_S ∂_T with every θ to the left of every ∂ = ∂/∂θ, indices
//! increasing inside each block. Subsets are bitmasks. The only relation needed to
//! normal-order a product is ∂ᵢθⱼ + θⱼ∂ᵢ = δᵢⱼ.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use ring_core::{Mono, RingCtx, RingError, Scalar, TruncatedSeries};

/// One normal-form monomial: θ-subset, ∂-subset and x-exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpKey {
    pub theta: u32,
    pub dtheta: u32,
    pub mono: Mono,
}

impl OpKey {
    pub fn new(theta: u32, dtheta: u32, mono: Mono) -> Self {
        OpKey { theta, dtheta, mono }
    }

    /// Z/2-degree: number of θ's and ∂'s mod 2.
    pub fn parity(&self) -> u32 {
        (self.theta.count_ones() + self.dtheta.count_ones()) % 2
    }
}

fn sign(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

fn above(mask: u32, j: usize) -> u32 {
    (mask >> (j + 1)).count_ones()
}

/// (S, T) · θⱼ in normal form.
fn times_theta(s: u32, t: u32, j: usize, out: &mut Vec<(u32, u32, i8)>, c: i8) {
    let bit = 1u32 << j;
    let wedge = |t2: u32, c2: i8, out: &mut Vec<(u32, u32, i8)>| {
        if s & bit == 0 {
            out.push((s | bit, t2, c2 * sign(above(s, j) % 2 == 1)));
        }
    };
    if t & bit != 0 {
        let b = above(t, j);
        out.push((s, t & !bit, c * sign(b % 2 == 1)));
        wedge(t, -c * sign((t.count_ones() - 1) % 2 == 1), out);
    } else {
        wedge(t, c * sign(t.count_ones() % 2 == 1), out);
    }
}

/// (S, T) · ∂ⱼ in normal form.
fn times_dtheta(s: u32, t: u32, j: usize, out: &mut Vec<(u32, u32, i8)>, c: i8) {
    let bit = 1u32 << j;
    if t & bit == 0 {
        out.push((s, t | bit, c * sign(above(t, j) % 2 == 1)));
    }
}

fn compute_product(a: (u32, u32), b: (u32, u32)) -> Vec<(u32, u32, i8)> {
    let mut cur = vec![(a.0, a.1, 1i8)];
    let mut next = Vec::new();
    let gens = (0..32)
        .filter(|j| b.0 >> j & 1 == 1)
        .map(|j| (true, j))
        .chain((0..32).filter(|j| b.1 >> j & 1 == 1).map(|j| (false, j)));
    for (is_theta, j) in gens {
        next.clear();
        for &(s, t, c) in &cur {
            if is_theta {
                times_theta(s, t, j, &mut next, c);
            } else {
                times_dtheta(s, t, j, &mut next, c);
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

type ProductTable = HashMap<(u32, u32, u32, u32), Vec<(u32, u32, i8)>>;

thread_local! {
    static PRODUCTS: RefCell<ProductTable> = RefCell::new(HashMap::new());
}

/// θ_S ∂_T · θ_U ∂_V as a signed sum of normal-form monomials.
pub fn clifford_product(a: (u32, u32), b: (u32, u32)) -> Vec<(u32, u32, i8)> {
    PRODUCTS.with(|m| {
        m.borrow_mut()
            .entry((a.0, a.1, b.0, b.1))
            .or_insert_with(|| compute_product(a, b))
            .clone()
    })
}

/// An element of the operator algebra over a ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperOp {
    ctx: RingCtx,
    terms: BTreeMap<OpKey, Scalar>,
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add_ref(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl SuperOp {
    pub fn zero(ctx: &RingCtx) -> Self {
        SuperOp { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &RingCtx) -> Self {
        Self::term(ctx, OpKey::new(0, 0, Mono::one(ctx.n_vars())), Scalar::one(ctx.field()))
    }

    pub fn term(ctx: &RingCtx, k: OpKey, c: Scalar) -> Self {
        let mut s = Self::zero(ctx);
        s.add_term(k, c);
        s
    }

    pub fn theta(ctx: &RingCtx, i: usize) -> Self {
        Self::term(ctx, OpKey::new(1 << i, 0, Mono::one(ctx.n_vars())), Scalar::one(ctx.field()))
    }

    pub fn dtheta(ctx: &RingCtx, i: usize) -> Self {
        Self::term(ctx, OpKey::new(0, 1 << i, Mono::one(ctx.n_vars())), Scalar::one(ctx.field()))
    }

    /// Multiplication by a function of x.
    pub fn from_series(f: &TruncatedSeries) -> Self {
        let mut s = Self::zero(f.ctx());
        for (m, c) in f.terms() {
            s.add_term(OpKey::new(0, 0, m.clone()), c.clone());
        }
        s
    }

    /// The coefficient of θ_S ∂_T as a function of x.
    pub fn coefficient(&self, theta: u32, dtheta: u32) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            &self.ctx,
            self.terms
                .iter()
                .filter(|(k, _)| k.theta == theta && k.dtheta == dtheta)
                .map(|(k, c)| (k.mono.clone(), c.clone())),
        )
    }

    pub fn add_term(&mut self, k: OpKey, c: Scalar) {
        if let Some(t) = self.ctx.truncation() {
            if k.mono.degree() > t {
                return;
            }
        }
        add_into(&mut self.terms, k, c);
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The Z/2-degree if all terms share one.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(OpKey::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// (even part, odd part).
    pub fn split_parity(&self) -> (SuperOp, SuperOp) {
        let mut e = Self::zero(&self.ctx);
        let mut o = Self::zero(&self.ctx);
        for (k, c) in &self.terms {
            let part = if k.parity() == 0 { &mut e } else { &mut o };
            part.terms.insert(k.clone(), c.clone());
        }
        (e, o)
    }

    pub fn add(&self, o: &SuperOp) -> SuperOp {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            add_into(&mut r.terms, k.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &SuperOp) -> SuperOp {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            add_into(&mut r.terms, k.clone(), c.neg_ref());
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> SuperOp {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        SuperOp {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a.mul_ref(c))).collect(),
        }
    }

    pub fn neg(&self) -> SuperOp {
        self.scale(&Scalar::from_i64(self.ctx.field(), -1))
    }

    pub fn try_mul(&self, o: &SuperOp) -> Result<SuperOp, RingError> {
        self.ctx.check_same(&o.ctx)?;
        let mut r = Self::zero(&self.ctx);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let c = ca.mul_ref(cb);
                let m = ka.mono.mul(&kb.mono);
                for (s, t, e) in clifford_product((ka.theta, ka.dtheta), (kb.theta, kb.dtheta)) {
                    let c = if e < 0 { c.neg_ref() } else { c.clone() };
                    r.add_term(OpKey::new(s, t, m.clone()), c);
                }
            }
        }
        Ok(r)
    }

    pub fn mul(&self, o: &SuperOp) -> SuperOp {
        self.try_mul(o).expect("operator contexts differ")
    }

    /// Graded commutator [a, b] = ab − (−1)^{|a||b|} ba, extended bilinearly.
    pub fn commutator(&self, o: &SuperOp) -> SuperOp {
        let (ae, ao) = self.split_parity();
        let (be, bo) = o.split_parity();
        let mut r = self.mul(o);
        r = r.sub(&be.mul(self));
        r = r.sub(&bo.mul(&ae));
        r.add(&bo.mul(&ao))
    }

    /// Divides every coefficient by xⱼ, discarding the remainder.
    pub fn quotient_by_var(&self, j: usize) -> SuperOp {
        let mut r = Self::zero(&self.ctx);
        for (k, c) in &self.terms {
            if let Some(m) = k.mono.div_var(j) {
                r.terms.insert(OpKey::new(k.theta, k.dtheta, m), c.clone());
            }
        }
        r
    }

    /// The largest x-degree of a term.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.mono.degree()).max().unwrap_or(0)
    }
}

fn write_subset(f: &mut fmt::Formatter<'_>, mask: u32, name: &str, first: &mut bool) -> fmt::Result {
    for i in 0..32 {
        if mask >> i & 1 == 1 {
            if !*first {
                write!(f, "*")?;
            }
            write!(f, "{name}{}", i + 1)?;
            *first = false;
        }
    }
    Ok(())
}

impl fmt::Display for SuperOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() {
                write!(f, "{a}")?;
                first = false;
            }
            if !k.mono.is_one() {
                if !first {
                    write!(f, "*")?;
                }
                let mut s = String::new();
                k.mono.write_with(self.ctx.names(), &mut s)?;
                write!(f, "{s}")?;
                first = false;
            }
            write_subset(f, k.theta, "th", &mut first)?;
            write_subset(f, k.dtheta, "dth", &mut first)?;
            if first {
                write!(f, "1")?;
            }
        }
        Ok(())
    }
}
