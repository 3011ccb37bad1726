//! Rationals that stay in machine words while they fit.
//!
//! The representation is canonical: `Small` whenever numerator and denominator fit
//! in i64 (denominator positive, lowest terms), so derived equality and hashing agree
//! with equality of values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub(crate) fn zero() -> Self {
        Rat::Small(0, 1)
    }

    pub(crate) fn from_i64(v: i64) -> Self {
        Rat::Small(v, 1)
    }

    /// Lowest terms from an i128 fraction with nonzero denominator.
    fn from_i128(n: i128, d: i128) -> Self {
        let g = gcd128(n, d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub(crate) fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::Small(a, b),
            _ => Rat::Big(q),
        }
    }

    pub(crate) fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::Big(q) => q.clone(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub(crate) fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Rat::Small(a, _) => *a < 0,
            Rat::Big(q) => q.is_negative(),
        }
    }

    pub(crate) fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, b) => *b == 1,
            Rat::Big(q) => q.is_integer(),
        }
    }

    pub(crate) fn numer_denom(&self) -> (BigInt, BigInt) {
        match self {
            Rat::Small(a, b) => (BigInt::from(*a), BigInt::from(*b)),
            Rat::Big(q) => (q.numer().clone(), q.denom().clone()),
        }
    }

    pub(crate) fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if b == d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    pub(crate) fn neg(&self) -> Rat {
        match self {
            Rat::Small(a, b) if *a != i64::MIN => Rat::Small(-a, *b),
            _ => Self::from_big(-self.to_big()),
        }
    }

    pub(crate) fn sub(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a - c, b)
                } else {
                    Self::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() - o.to_big()),
        }
    }

    pub(crate) fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    /// Reciprocal of a nonzero value.
    pub(crate) fn recip(&self) -> Rat {
        match self {
            Rat::Small(a, b) => Self::from_i128(*b as i128, *a as i128),
            Rat::Big(q) => Self::from_big(q.recip()),
        }
    }

    pub(crate) fn abs(&self) -> Rat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub(crate) fn from_bigint(v: &BigInt) -> Rat {
        match v.to_i64() {
            Some(a) => Rat::Small(a, 1),
            None => Rat::Big(BigRational::from_integer(v.clone())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_and_big_agree() {
        let vals = [(3, 4), (-5, 6), (i64::MAX, 7), (i64::MIN + 1, 3), (1, i64::MAX), (0, 1)];
        for &(a, b) in &vals {
            for &(c, d) in &vals {
                let (x, y) = (Rat::from_big(big(a, b)), Rat::from_big(big(c, d)));
                assert_eq!(x.add(&y), Rat::from_big(big(a, b) + big(c, d)));
                assert_eq!(x.sub(&y), Rat::from_big(big(a, b) - big(c, d)));
                assert_eq!(x.mul(&y), Rat::from_big(big(a, b) * big(c, d)));
                if !y.is_zero() {
                    assert_eq!(y.recip(), Rat::from_big(big(c, d).recip()));
                }
            }
        }
    }

    #[test]
    fn overflow_promotes_and_shrinks_back() {
        let m = Rat::from_i64(i64::MAX);
        let s = m.add(&Rat::from_i64(1));
        assert!(matches!(s, Rat::Big(_)));
        assert_eq!(s.sub(&Rat::from_i64(1)), m);
        assert_eq!(Rat::from_i64(i64::MIN).neg().neg(), Rat::from_i64(i64::MIN));
    }
}
