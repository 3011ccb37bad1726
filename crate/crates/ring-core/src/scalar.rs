//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::RingError;
use crate::rat::Rat;

/// Which exact field the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Prime field F_p. Rejects composite p and moduli too large for u128 products.
    pub fn prime(p: u64) -> Result<Self, RingError> {
        if !(2..1u64 << 62).contains(&p) || !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Prime(p) => write!(f, "prime({p})"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact scalar. Prime residues carry their modulus so that arithmetic needs no context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Q(Rat),
    P(u64, u64),
}

use Repr::{P, Q};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar(Q(Rat::zero())),
            FieldSpec::Prime(p) => Scalar(P(0, p)),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rational => Scalar(Q(Rat::from_i64(v))),
            FieldSpec::Prime(p) => Scalar(P((v as i128).rem_euclid(p as i128) as u64, p)),
        }
    }

    pub fn from_bigint(field: FieldSpec, v: &BigInt) -> Self {
        match field {
            FieldSpec::Rational => Scalar(Q(Rat::from_bigint(v))),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar(P(r.to_u64().unwrap_or(0), p))
            }
        }
    }

    /// Maps a rational into the field; fails in F_p when the denominator vanishes mod p.
    pub fn from_rational(field: FieldSpec, q: &BigRational) -> Result<Self, RingError> {
        match field {
            FieldSpec::Rational => Ok(Scalar(Q(Rat::from_big(q.clone())))),
            FieldSpec::Prime(_) => {
                let n = Self::from_bigint(field, q.numer());
                let d = Self::from_bigint(field, q.denom());
                n.checked_div(&d).ok_or(RingError::DivisionByZero)
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Q(_) => FieldSpec::Rational,
            P(_, p) => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Q(q) => q.is_zero(),
            P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Q(q) => q.is_one(),
            P(v, _) => *v == 1,
        }
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Q(a), Q(b)) => Scalar(Q(a.add(b))),
            (P(a, p), P(b, q)) if p == q => {
                let s = a + b;
                Scalar(P(if s >= *p { s - p } else { s }, *p))
            }
            _ => Self::mismatch(self, o),
        }
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Q(a), Q(b)) => Scalar(Q(a.sub(b))),
            (P(a, p), P(b, q)) if p == q => Scalar(P(if a >= b { a - b } else { a + p - b }, *p)),
            _ => Self::mismatch(self, o),
        }
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        match (&self.0, &o.0) {
            (Q(a), Q(b)) => Scalar(Q(a.mul(b))),
            (P(a, p), P(b, q)) if p == q => Scalar(P(mulmod(*a, *b, *p), *p)),
            _ => Self::mismatch(self, o),
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match &self.0 {
            Q(a) => Scalar(Q(a.neg())),
            P(a, p) => Scalar(P(if *a == 0 { 0 } else { p - a }, *p)),
        }
    }

    /// In-place `self += c * x`, the inner loop of elimination.
    pub fn add_mul_assign(&mut self, c: &Scalar, x: &Scalar) {
        match (&mut self.0, &c.0, &x.0) {
            (P(a, p), P(b, _), P(d, _)) => {
                let s = (*a as u128 + *b as u128 * *d as u128) % *p as u128;
                *a = s as u64;
            }
            _ => {
                let t = c.mul_ref(x);
                *self = self.add_ref(&t);
            }
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match &self.0 {
            Q(a) => Some(Scalar(Q(a.recip()))),
            P(a, p) => Some(Scalar(P(powmod(*a, p - 2, *p), *p))),
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self.mul_ref(&i))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = Scalar::one(self.field());
        for _ in 0..e {
            r = r.mul_ref(self);
        }
        r
    }

    /// Absolute value in Q; the canonical representative in F_p.
    pub fn abs(&self) -> Scalar {
        match &self.0 {
            Q(a) => Scalar(Q(a.abs())),
            P(..) => self.clone(),
        }
    }

    /// True when `self = ±o`.
    pub fn eq_up_to_sign(&self, o: &Scalar) -> bool {
        self == o || *self == o.neg_ref()
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Q(a) => a.is_negative(),
            P(..) => false,
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Q(a) => Some(a.to_big()),
            P(..) => None,
        }
    }

    /// The residue in [0, p) of a prime-field scalar.
    pub fn residue_value(&self) -> Option<u64> {
        match &self.0 {
            P(a, _) => Some(*a),
            Q(_) => None,
        }
    }

    /// Parses "3", "-1/2" in Q or a residue in F_p.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Scalar, RingError> {
        let s = s.trim();
        let bad = || RingError::Parse {
            pos: 0,
            msg: format!("bad coefficient {s:?}"),
        };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Scalar::from_rational(field, &BigRational::new(n, d))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Q(a) => {
                let (n, d) = a.numer_denom();
                if a.is_integer() {
                    write!(f, "{n}")
                } else {
                    write!(f, "{n}/{d}")
                }
            }
            P(a, _) => write!(f, "{a}"),
        }
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
    };
}
scalar_binop!(Add, add, add_ref);
scalar_binop!(Sub, sub, sub_ref);
scalar_binop!(Mul, mul, mul_ref);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
